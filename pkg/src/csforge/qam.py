"""Square QAM lattices and the five synthesis rules that reach them.

A 4s^2-point lattice holds the odd-integer grid points (2u-1) + j(2v-1) over
all four quadrants.  Encoder outputs use a unit-amplitude convention in which
the innermost diagonal point maps to 1; multiplying an output by (1 + j)
moves it onto the lattice, which is what ``on_lattice`` checks.

Each rule fixes the amplitude knobs (and, for some, irrational phase steps)
of the pair encoder so every nonzero output element lands on the lattice:

* green scales and rotates the whole quaternary family onto one radius;
* yellow gives the two halves independent diagonal radii;
* blue additionally rotates one half off the diagonal;
* cyan rotates both halves off the diagonal;
* orange keeps one radius but sends the halves to mirror angles.

Counting helpers return family sizes in units of G0 = (m!/2) 4^(m+1) for
length-1 seeds and A0 = m! 4^(m+1) for longer seeds, and ``enumerate_rule``
walks the full parameter space for small cases so the formulas can be
checked by exhaustive deduplication.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .encoder import (
    EncoderParams,
    RecursionParams,
    SeedPair,
    encode_pair,
    known_seed,
    recursion_to_encoder,
)

__all__ = [
    "DEFAULT_ENUM_GUARD",
    "ENUM_GUARD_ENV",
    "EnumerationLimitError",
    "Geometry",
    "QamGeometry",
    "RULES",
    "RuleCount",
    "RuleSpec",
    "blue_params",
    "count_sequences",
    "cyan_params",
    "distinct_sequences",
    "enumerate_rule",
    "enumeration_size",
    "green_params",
    "is_qam_point",
    "lattice_geometry",
    "lattice_points",
    "on_lattice",
    "orange_params",
    "rule_params",
    "sequence_key",
    "to_lattice",
    "yellow_params",
]

RULES = ("green", "yellow", "blue", "cyan", "orange")

RULE_MODULUS = 4  # all five rules live on quaternary phases

# exponent units per radian and per neper when H = 4
_SCALE = 4.0 / (2.0 * math.pi)

ENUM_GUARD_ENV = "CS_FORGE_MAX_ENUM"
DEFAULT_ENUM_GUARD = 10_000_000

QAM_POINT_TOL = 1e-6


class EnumerationLimitError(RuntimeError):
    """Raised when an exhaustive walk would exceed the size guard."""


class Geometry(NamedTuple):
    """Polar data of the first-quadrant lattice point (2u-1) + j(2v-1)."""

    distance: float  # to the origin
    gamma: float  # distance ratio against the innermost diagonal point
    theta: float  # angle from the real axis
    phi: float  # angle from the diagonal
    mu: float  # angle to the mirror point across the diagonal


def lattice_geometry(u: int, v: int) -> Geometry:
    if u < 1 or v < 1:
        raise ValueError(f"lattice indices must be >= 1, got ({u}, {v})")
    re = 2 * u - 1
    im = 2 * v - 1
    distance = math.hypot(re, im)
    theta = math.atan2(im, re)
    phi = math.pi / 4 - theta
    return Geometry(distance, distance / math.sqrt(2.0), theta, phi, 2 * phi)


@dataclass(frozen=True)
class QamGeometry:
    """Derived structure of the 4s^2-point lattice."""

    s: int

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be a positive integer")

    @property
    def n_quadrant(self) -> int:
        return self.s**2

    @property
    def n_diagonal(self) -> int:
        return self.s

    @property
    def n_offdiagonal(self) -> int:
        return self.s * (self.s - 1) // 2

    @property
    def n_triangle(self) -> int:
        return self.s * (self.s + 1) // 2

    def geometry(self, u: int, v: int) -> Geometry:
        if not (1 <= u <= self.s and 1 <= v <= self.s):
            raise ValueError(f"indices ({u}, {v}) out of range for s={self.s}")
        return lattice_geometry(u, v)


def lattice_points(s: int) -> np.ndarray:
    """All 4s^2 lattice points over the four quadrants."""
    odd = 2 * np.arange(-s + 1, s + 1) - 1
    re, im = np.meshgrid(odd, odd)
    return (re + 1j * im).reshape(-1)


def is_qam_point(value: complex, s: int, tol: float = QAM_POINT_TOL) -> bool:
    """Whether a complex value sits on the 4s^2 lattice within ``tol``."""
    if s < 1:
        raise ValueError("s must be a positive integer")

    def nearest_odd(x: float) -> float:
        return 2.0 * round((x - 1.0) / 2.0) + 1.0

    re = nearest_odd(value.real)
    im = nearest_odd(value.imag)
    if abs(value.real - re) > tol or abs(value.imag - im) > tol:
        return False
    return abs(re) <= 2 * s - 1 and abs(im) <= 2 * s - 1


def to_lattice(values) -> np.ndarray:
    """Map encoder outputs onto lattice coordinates (multiply by 1 + j)."""
    return np.asarray(values, dtype=complex) * (1 + 1j)


def on_lattice(values, s: int, tol: float = QAM_POINT_TOL) -> bool:
    """Whether every nonzero element, mapped to lattice coordinates, is a point."""
    mapped = to_lattice(values)
    return all(is_qam_point(complex(v), s, tol) for v in mapped if v != 0)


# -- rule parameter builders -------------------------------------------------


def _common(s, m, pi, k, seed):
    if s < 1:
        raise ValueError("s must be a positive integer")
    pi = tuple(pi) if pi is not None else tuple(range(1, m + 1))
    k = tuple(k) if k is not None else (0.0,) * m
    if len(k) != m:
        raise ValueError(f"k must have {m} entries")
    seed = seed if seed is not None else known_seed(1)
    return pi, k, seed


def _check_range(s, name, value):
    if not 1 <= value <= s:
        raise ValueError(f"{name}={value} out of range 1..{s}")


def green_params(s, u, v, m, pi=None, k=None, z=0, seed=None) -> EncoderParams:
    """One radius for all elements: scale by gamma, rotate onto the point."""
    _check_range(s, "u", u)
    _check_range(s, "v", v)
    pi, k, seed = _common(s, m, pi, k, seed)
    g = lattice_geometry(u, v)
    return EncoderParams(
        m=m,
        H=RULE_MODULUS,
        pi=pi,
        e=(0.0,) * m,
        e_prime=_SCALE * math.log(g.gamma),
        k=k,
        k_prime=z - _SCALE * g.phi,
        k_dprime=z - _SCALE * g.phi,
        d=(0,) * m,
        seed=seed,
    )


def _converted(rp: RecursionParams, extra_const: float) -> EncoderParams:
    params = recursion_to_encoder(rp)
    return params.replace(
        k_prime=params.k_prime + extra_const,
        k_dprime=params.k_dprime + extra_const,
    )


def yellow_params(s, u, v, ell, m, pi=None, k=None, k_prime=0, seed=None) -> EncoderParams:
    """Two diagonal radii: the halves are scaled independently at step ell."""
    _check_range(s, "u", u)
    _check_range(s, "v", v)
    if u == v:
        raise ValueError("yellow rule needs two different diagonal radii (u != v)")
    if not 1 <= ell <= m:
        raise ValueError(f"ell={ell} out of range 1..{m}")
    pi, k, seed = _common(s, m, pi, k, seed)
    scale_a = [0.0] * m
    scale_b = [0.0] * m
    scale_a[ell - 1] = _SCALE * math.log(lattice_geometry(u, u).gamma)
    scale_b[ell - 1] = _SCALE * math.log(lattice_geometry(v, v).gamma)
    rp = RecursionParams.neutral(
        m,
        RULE_MODULUS,
        psi=tuple(m - p for p in pi),
        seed=seed,
        scale_a=tuple(scale_a),
        scale_b=tuple(scale_b),
        phase_joint=k,
    )
    return _converted(rp, k_prime)


def blue_params(
    s, u, v, w, ell, m, pi=None, k=None, z=0, sign=1, rotate_b_half=True, seed=None
) -> EncoderParams:
    """One diagonal radius and one off-diagonal point: rotate a single half."""
    _check_range(s, "u", u)
    _check_range(s, "v", v)
    _check_range(s, "w", w)
    if v <= w:
        raise ValueError("blue rule needs an off-diagonal pair with v > w")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not 1 <= ell <= m:
        raise ValueError(f"ell={ell} out of range 1..{m}")
    pi, k, seed = _common(s, m, pi, k, seed)
    diag = _SCALE * math.log(lattice_geometry(u, u).gamma)
    off = lattice_geometry(v, w)
    off_scale = _SCALE * math.log(off.gamma)
    rot = sign * _SCALE * off.phi
    scale_a = [0.0] * m
    scale_b = [0.0] * m
    phase_a = [0.0] * m
    phase_b = [0.0] * m
    if rotate_b_half:
        scale_a[ell - 1] = diag
        scale_b[ell - 1] = off_scale
        phase_b[ell - 1] = rot
    else:
        scale_a[ell - 1] = off_scale
        scale_b[ell - 1] = diag
        phase_a[ell - 1] = rot
    rp = RecursionParams.neutral(
        m,
        RULE_MODULUS,
        psi=tuple(m - p for p in pi),
        seed=seed,
        scale_a=tuple(scale_a),
        scale_b=tuple(scale_b),
        phase_a=tuple(phase_a),
        phase_b=tuple(phase_b),
        phase_joint=k,
    )
    return _converted(rp, z)


def cyan_params(
    s, u, t, v, w, ell, m, pi=None, k=None, z=0, sign_a=1, sign_b=1, seed=None
) -> EncoderParams:
    """Two distinct off-diagonal points, one per half, each with its rotation."""
    for name, value in (("u", u), ("t", t), ("v", v), ("w", w)):
        _check_range(s, name, value)
    if u <= t or v <= w:
        raise ValueError("cyan rule needs off-diagonal pairs with u > t and v > w")
    if (u, t) == (v, w):
        raise ValueError("cyan rule needs two different off-diagonal points")
    if sign_a not in (1, -1) or sign_b not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    if not 1 <= ell <= m:
        raise ValueError(f"ell={ell} out of range 1..{m}")
    pi, k, seed = _common(s, m, pi, k, seed)
    first = lattice_geometry(u, t)
    second = lattice_geometry(v, w)
    scale_a = [0.0] * m
    scale_b = [0.0] * m
    phase_a = [0.0] * m
    phase_b = [0.0] * m
    scale_a[ell - 1] = _SCALE * math.log(first.gamma)
    scale_b[ell - 1] = _SCALE * math.log(second.gamma)
    phase_a[ell - 1] = sign_a * _SCALE * first.phi
    phase_b[ell - 1] = sign_b * _SCALE * second.phi
    rp = RecursionParams.neutral(
        m,
        RULE_MODULUS,
        psi=tuple(m - p for p in pi),
        seed=seed,
        scale_a=tuple(scale_a),
        scale_b=tuple(scale_b),
        phase_a=tuple(phase_a),
        phase_b=tuple(phase_b),
        phase_joint=k,
    )
    return _converted(rp, z)


def orange_params(
    s, u, v, ell, m, pi=None, k=None, z_ell=0, z_prime=0, sign=1, seed=None
) -> EncoderParams:
    """One off-diagonal radius; the halves sit at mirror angles."""
    _check_range(s, "u", u)
    _check_range(s, "v", v)
    if u <= v:
        raise ValueError("orange rule needs u > v")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not 1 <= ell <= m:
        raise ValueError(f"ell={ell} out of range 1..{m}")
    pi, k, seed = _common(s, m, pi, k, seed)
    g = lattice_geometry(u, v)
    phases = list(k)
    phases[ell - 1] = z_ell - sign * _SCALE * g.mu
    return EncoderParams(
        m=m,
        H=RULE_MODULUS,
        pi=pi,
        e=(0.0,) * m,
        e_prime=_SCALE * math.log(g.gamma),
        k=tuple(phases),
        k_prime=z_prime + sign * _SCALE * g.phi,
        k_dprime=z_prime + sign * _SCALE * g.phi,
        d=(0,) * m,
        seed=seed,
    )


@dataclass(frozen=True)
class RuleSpec:
    """Declarative form of one rule choice, convertible to encoder params."""

    rule: str
    u: int = 1
    v: int = 1
    w: int = 1
    t: int = 1
    ell: int = 1
    sign_a: int = 1
    sign_b: int = 1
    rotate_b_half: bool = True
    z: int = 0
    z_ell: int = 0
    k: tuple = ()
    k_prime: float = 0.0


def rule_params(spec: RuleSpec, s: int, m: int, pi=None, seed=None) -> EncoderParams:
    """Build encoder parameters from a rule spec (modulus fixed at 4)."""
    k = spec.k if spec.k else None
    if spec.rule == "green":
        return green_params(s, spec.u, spec.v, m, pi, k, spec.z, seed)
    if spec.rule == "yellow":
        return yellow_params(s, spec.u, spec.v, spec.ell, m, pi, k, spec.k_prime, seed)
    if spec.rule == "blue":
        return blue_params(
            s, spec.u, spec.v, spec.w, spec.ell, m, pi, k, spec.z,
            spec.sign_a, spec.rotate_b_half, seed,
        )
    if spec.rule == "cyan":
        return cyan_params(
            s, spec.u, spec.t, spec.v, spec.w, spec.ell, m, pi, k, spec.z,
            spec.sign_a, spec.sign_b, seed,
        )
    if spec.rule == "orange":
        return orange_params(
            s, spec.u, spec.v, spec.ell, m, pi, k, spec.z_ell, spec.z, spec.sign_a, seed
        )
    raise ValueError(f"unknown rule {spec.rule!r}; expected one of {RULES}")


# -- family counting ---------------------------------------------------------


class RuleCount(NamedTuple):
    rule: str
    s: int
    m: int
    n_class: str
    unit: str
    units: int
    count: int


def _unit_value(m: int, n_class: str) -> tuple[str, int]:
    base = math.factorial(m) * 4 ** (m + 1)
    if n_class == "N=1":
        return "G0", base // 2
    if n_class == "N>1":
        return "A0", base
    raise ValueError(f"n_class must be 'N=1' or 'N>1', got {n_class!r}")


def count_sequences(rule: str, s: int, m: int, n_class: str = "N=1") -> RuleCount:
    """Closed-form family size for one rule (or 'total'), exact integers.

    The per-rule forms presume the reversal redundancy of the quadratic
    phase term, which needs m >= 2; at m = 1 the N=1 green and orange
    formulas undercount and exhaustive enumeration is the reference.
    """
    if s < 1 or m < 1:
        raise ValueError("s and m must be positive")
    single = n_class == "N=1"
    unit, unit_count = _unit_value(m, n_class)
    span = (m + 1) if single else m
    if rule == "green":
        units = s**2
    elif rule == "yellow":
        units = s * (s - 1) * span
    elif rule == "blue":
        units = 2 * s**2 * (s - 1) * span
    elif rule == "cyan":
        units = (s + 1) * s * (s - 1) * (s - 2) * span
    elif rule == "orange":
        units = s * (s - 1) * m
    elif rule == "total":
        units = (s**4 - s**2) * span + (s if single else s**2)
    else:
        raise ValueError(f"unknown rule {rule!r}; expected one of {RULES + ('total',)}")
    return RuleCount(rule, s, m, n_class, unit, units, units * unit_count)


# -- exhaustive enumeration ---------------------------------------------------


def sequence_key(values) -> bytes:
    """Canonical dedup key: values rounded to 12 decimals, zero-normalized."""
    arr = np.round(np.asarray(values, dtype=complex), 12) + 0.0
    return arr.tobytes()


def _enum_guard(guard: int | None) -> int:
    if guard is not None:
        return int(guard)
    return int(os.environ.get(ENUM_GUARD_ENV, DEFAULT_ENUM_GUARD))


def _index_combos(rule: str, s: int) -> list[dict]:
    offdiag = [(a, b) for a in range(1, s + 1) for b in range(1, a)]  # a > b
    if rule == "green":
        return [dict(u=u, v=v) for u in range(1, s + 1) for v in range(1, s + 1)]
    if rule == "yellow":
        return [
            dict(u=u, v=v)
            for u in range(1, s + 1)
            for v in range(1, s + 1)
            if u != v
        ]
    if rule == "blue":
        return [
            dict(u=u, v=v, w=w, rotate_b_half=half, sign=sign)
            for u in range(1, s + 1)
            for (v, w) in offdiag
            for half in (True, False)
            for sign in (1, -1)
        ]
    if rule == "cyan":
        return [
            dict(u=u, t=t, v=v, w=w, sign_a=sa, sign_b=sb)
            for (u, t) in offdiag
            for (v, w) in offdiag
            if (u, t) != (v, w)
            for sa in (1, -1)
            for sb in (1, -1)
        ]
    if rule == "orange":
        return [dict(u=u, v=v, sign=sign) for (u, v) in offdiag for sign in (1, -1)]
    raise ValueError(f"unknown rule {rule!r}; expected one of {RULES}")


def enumeration_size(rule, s, m, n_pis=None, n_ells=None) -> int:
    """Raw combination count the exhaustive walk would visit."""
    n_pis = n_pis if n_pis is not None else math.factorial(m)
    n_ells = n_ells if n_ells is not None else m
    combos = len(_index_combos(rule, s))
    if rule == "green":
        return combos * n_pis * 4 ** (m + 1)
    # others: per combo, every step choice, every order, 4^m step phases
    # (orange: 4^(m-1) plus its own quadrant pair) and one free constant
    return combos * n_ells * n_pis * 4 ** (m + 1)


def enumerate_rule(
    rule: str,
    s: int,
    m: int,
    pis: Iterable[Sequence[int]] | None = None,
    ells: Iterable[int] | None = None,
    seed: SeedPair | None = None,
    guard: int | None = None,
) -> Iterator[tuple[EncoderParams, np.ndarray]]:
    """Walk every admitted parameter combination in lexicographic order.

    Yields (params, first-output values).  Raises EnumerationLimitError when
    the raw combination count exceeds the guard (default 1e7, overridable
    via the CS_FORGE_MAX_ENUM environment variable).
    """
    pis = [tuple(p) for p in pis] if pis is not None else list(
        itertools.permutations(range(1, m + 1))
    )
    ells = list(ells) if ells is not None else list(range(1, m + 1))
    size = enumeration_size(rule, s, m, len(pis), len(ells))
    limit = _enum_guard(guard)
    if size > limit:
        raise EnumerationLimitError(
            f"{rule} enumeration at s={s}, m={m} needs {size} combinations, guard is {limit}"
        )
    seed = seed if seed is not None else known_seed(1)

    has_ell = rule != "green"
    for combo in _index_combos(rule, s):
        for ell in ells if has_ell else [None]:
            for pi in pis:
                if rule == "orange":
                    for rest in itertools.product(range(4), repeat=m - 1):
                        for z_ell in range(4):
                            for z_prime in range(4):
                                k = list(rest)
                                k.insert(ell - 1, 0)
                                params = orange_params(
                                    s, combo["u"], combo["v"], ell, m, pi, tuple(k),
                                    z_ell, z_prime, combo["sign"], seed,
                                )
                                yield params, encode_pair(params).c.values
                    continue
                for k in itertools.product(range(4), repeat=m):
                    for const in range(4):
                        if rule == "green":
                            params = green_params(
                                s, combo["u"], combo["v"], m, pi, k, const, seed
                            )
                        elif rule == "yellow":
                            params = yellow_params(
                                s, combo["u"], combo["v"], ell, m, pi, k, const, seed
                            )
                        elif rule == "blue":
                            params = blue_params(
                                s, combo["u"], combo["v"], combo["w"], ell, m, pi, k,
                                const, combo["sign"], combo["rotate_b_half"], seed,
                            )
                        else:
                            params = cyan_params(
                                s, combo["u"], combo["t"], combo["v"], combo["w"], ell,
                                m, pi, k, const, combo["sign_a"], combo["sign_b"], seed,
                            )
                        yield params, encode_pair(params).c.values


def distinct_sequences(rule, s, m, pis=None, ells=None, seed=None, guard=None) -> int:
    """Number of distinct first outputs over the full enumeration."""
    seen: set[bytes] = set()
    for _, values in enumerate_rule(rule, s, m, pis, ells, seed, guard):
        seen.add(sequence_key(values))
    return len(seen)
