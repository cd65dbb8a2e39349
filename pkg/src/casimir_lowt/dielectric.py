"""Permittivity along the imaginary frequency axis and the TE/TM
reflection coefficients of two identical halfspaces.

The material model is a static dielectric constant eps_bar, a single
oscillator at omega0, and a Drude-type conductivity pole 4*pi*sigma/zeta.
The conductivity pole makes eps diverge at zeta = 0, which is exactly the
feature driving the low-temperature behaviour studied by the rest of the
package; reflection limits at zeta = 0 are therefore always taken
analytically, never by evaluating eps there.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import mpmath
from mpmath import mpf


class PermittivityMode(enum.Enum):
    FULL_OSCILLATOR = "full"      # 1 + (eps_bar-1)/(1+zeta^2/omega0^2) + 4 pi sigma / zeta
    LOW_FREQ = "lowfreq"          # eps_bar + 4 pi sigma / zeta
    IDEAL_METAL = "ideal"         # r_TE^2 = r_TM^2 = 1 at all frequencies


@dataclass(frozen=True)
class DielectricModel:
    eps_bar: float
    omega0: float
    four_pi_sigma: float
    mode: PermittivityMode = PermittivityMode.FULL_OSCILLATOR

    def __post_init__(self) -> None:
        if self.mode is PermittivityMode.IDEAL_METAL:
            return
        if self.eps_bar < 1:
            raise ValueError("eps_bar must be >= 1")
        if self.omega0 <= 0:
            raise ValueError("omega0 must be positive")
        if self.four_pi_sigma < 0:
            raise ValueError("4 pi sigma must be nonnegative")

    @property
    def conducting(self) -> bool:
        return self.mode is PermittivityMode.IDEAL_METAL or self.four_pi_sigma > 0

    def with_sigma(self, four_pi_sigma: float) -> "DielectricModel":
        return replace(self, four_pi_sigma=four_pi_sigma)


# Si-like parameters used throughout the numerical studies.
SI_PAPER = DielectricModel(eps_bar=11.67, omega0=8e15, four_pi_sigma=1e12)
SI_EPSBAR1 = DielectricModel(eps_bar=1.0, omega0=8e15, four_pi_sigma=1e12)
IDEAL_METAL = DielectricModel(eps_bar=1.0, omega0=1.0, four_pi_sigma=0.0,
                              mode=PermittivityMode.IDEAL_METAL)


@dataclass(frozen=True)
class ReflectionPair:
    r_te: object  # in [-1, 0] for eps >= 1
    r_tm: object  # in [0, 1]

    def squared(self, pol: str):
        return self.r_te ** 2 if pol == "te" else self.r_tm ** 2


def permittivity(model: DielectricModel, zeta):
    """eps(i zeta) for zeta > 0 (or zeta = 0 when there is no conductivity)."""
    zeta = mpf(zeta)
    if model.mode is PermittivityMode.IDEAL_METAL:
        raise ValueError("ideal metal has no finite permittivity")
    if zeta < 0:
        raise ValueError("zeta must be nonnegative")
    if zeta == 0:
        if model.four_pi_sigma > 0:
            raise ZeroDivisionError("eps diverges at zero frequency")
        return mpf(model.eps_bar)
    if model.mode is PermittivityMode.LOW_FREQ:
        return mpf(model.eps_bar) + mpf(model.four_pi_sigma) / zeta
    return (1 + (mpf(model.eps_bar) - 1) / (1 + (zeta / mpf(model.omega0)) ** 2)
            + mpf(model.four_pi_sigma) / zeta)


def reflection_coeffs(eps, kappa, zeta) -> ReflectionPair:
    """TE and TM reflection coefficients at imaginary frequency.

    kappa^2 = k_perp^2 + zeta^2 requires kappa >= zeta.  The square root is
    factored as kappa*sqrt(1 + (zeta/kappa)^2 (eps-1)) so that huge eps
    (conductivity pole near zeta = 0) cannot overflow.
    """
    eps = mpf(eps)
    kappa = mpf(kappa)
    zeta = mpf(zeta)
    if kappa < zeta:
        raise ValueError("kappa must be >= zeta")
    if eps < 1:
        raise ValueError("eps must be >= 1 on the imaginary axis")
    if kappa == 0:
        return ReflectionPair(mpf(0), (eps - 1) / (eps + 1))
    ratio = mpmath.sqrt(1 + (zeta / kappa) ** 2 * (eps - 1))  # s / kappa
    r_te = (1 - ratio) / (1 + ratio)
    r_tm = (eps - ratio) / (eps + ratio)
    return ReflectionPair(r_te, r_tm)


def one_minus_r_tm_sq(eps, kappa, zeta):
    """1 - r_TM^2 without cancellation, for eps >> 1 diagnostics."""
    eps = mpf(eps)
    kappa = mpf(kappa)
    zeta = mpf(zeta)
    ratio = mpmath.sqrt(1 + (zeta / kappa) ** 2 * (eps - 1))
    return 4 * eps * ratio / (eps + ratio) ** 2


def reflection_limits_zero_frequency(model: DielectricModel):
    """(r_te, r_tm) in the zeta -> 0 limit at fixed kappa > 0.

    A conductivity pole drives r_tm to 1 regardless of eps_bar; without it
    r_tm tends to the static-dielectric value.  r_te always vanishes for
    finite materials (the ideal metal keeps |r_te| = 1 at all frequencies).
    """
    if model.mode is PermittivityMode.IDEAL_METAL:
        return mpf(-1), mpf(1)
    if model.four_pi_sigma > 0:
        return mpf(0), mpf(1)
    eb = mpf(model.eps_bar)
    return mpf(0), (eb - 1) / (eb + 1)


def a_mu(eps_bar, mu):
    """Squared zero-frequency-limit TM coefficient at reduced frequency mu.

    A_mu = [(1 + (eps_bar-1) mu) / (1 + (eps_bar+1) mu)]^2; equals 1 at
    mu = 0 and decreases to ((eps_bar-1)/(eps_bar+1))^2 as mu -> infinity.
    """
    eps_bar = mpf(eps_bar)
    mu = mpf(mu)
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    if eps_bar < 1:
        raise ValueError("eps_bar must be >= 1")
    return ((1 + (eps_bar - 1) * mu) / (1 + (eps_bar + 1) * mu)) ** 2


def b_coefficient(x):
    """Squared TE coefficient in rescaled-wavenumber form: (x - sqrt(x^2+1))^4.

    Evaluated as (x + sqrt(x^2+1))^-4 to stay accurate at large x.
    """
    x = mpf(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    return (x + mpmath.sqrt(x * x + 1)) ** -4


def load_material(path) -> DielectricModel:
    """Material parameters from a flat key-value file.

    Recognized keys: eps_bar, omega0, sigma_over_eps0, model (full|lowfreq|ideal).
    Lines starting with '#' are comments.
    """
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad material line: {raw.strip()!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            values[key] = val
    mode = PermittivityMode(values.get("model", "full"))
    if mode is PermittivityMode.IDEAL_METAL:
        return IDEAL_METAL
    return DielectricModel(
        eps_bar=float(values.get("eps_bar", 1.0)),
        omega0=float(values.get("omega0", SI_PAPER.omega0)),
        four_pi_sigma=float(values.get("sigma_over_eps0", 0.0)),
        mode=mode,
    )
