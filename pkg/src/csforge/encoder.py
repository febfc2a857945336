"""Closed-form synthesis of complementary sequence pairs.

Five multilinear component functions over the block index drive the encoder:
two amplitude exponents (one per output), two phase exponents, and a shift
function that pads zeros between seed copies.  The same pairs can be built by
literally running the underlying two-branch recursion; ``run_recursion`` does
exactly that and acts as the independent oracle for ``encode_pair``, with
``recursion_to_encoder`` translating between the two parameter sets.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from functools import reduce
from typing import NamedTuple

import numpy as np

from .analysis import GCP_TOL, is_gcp
from .boolean import BooleanPolynomial, xor_expand
from .sequences import ComplexSequence, as_array

__all__ = [
    "ComponentFunctions",
    "EncodedPair",
    "EncoderParams",
    "RecursionParams",
    "SeedPair",
    "UnitExpElement",
    "component_functions",
    "encode_pair",
    "known_seed",
    "order_select",
    "recursion_to_encoder",
    "run_recursion",
]

MAX_ENCODE_VARS = 16


@dataclass(frozen=True)
class UnitExpElement:
    """Coefficient xi^(r + j i) with xi = e^(2 pi / H), or an exact zero.

    ``r`` scales the magnitude, ``i`` is a phase step on the H-th roots of
    unity (real-valued steps are allowed, giving intermediate angles).
    """

    r: float
    i: float
    H: float
    zero: bool = False

    @classmethod
    def exact_zero(cls, H: float) -> "UnitExpElement":
        return cls(0.0, 0.0, H, zero=True)

    def to_complex(self) -> complex:
        if self.zero:
            return 0j
        w = 2.0 * math.pi / self.H
        return cmath.exp(w * self.r + 1j * w * (self.i % self.H))

    def __mul__(self, other: "UnitExpElement") -> "UnitExpElement":
        if self.H != other.H:
            raise ValueError("mixed moduli")
        if self.zero or other.zero:
            return UnitExpElement.exact_zero(self.H)
        return UnitExpElement(self.r + other.r, self.i + other.i, self.H)


class SeedPair:
    """A verified complementary pair used to seed the synthesis.

    Construction fails unless the off-peak autocorrelations cancel within
    ``tol`` relative to the combined zero-lag energy.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b, tol: float = GCP_TOL):
        a = ComplexSequence(as_array(a))
        b = ComplexSequence(as_array(b))
        if len(a) != len(b):
            raise ValueError(f"seed lengths differ: {len(a)} vs {len(b)}")
        check = is_gcp(a, b, tol)
        if not check.ok:
            raise ValueError(
                f"seed pair is not complementary: residual {check.residual:.3e} > {tol:.1e}"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("SeedPair is immutable")

    def __len__(self) -> int:
        return len(self.a)

    def __eq__(self, other):
        if not isinstance(other, SeedPair):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __repr__(self):
        return f"SeedPair(length={len(self)})"


_KNOWN_SEEDS = {
    1: ((1,), (1,)),
    2: ((1, 1), (1, -1)),
    3: ((1, 1j, 1), (1, 1, -1)),
    4: ((1, 1, 1, -1), (1, 1, -1, 1)),
}


def known_seed(length: int) -> SeedPair:
    """A stock complementary pair of the requested length (1 to 4)."""
    try:
        a, b = _KNOWN_SEEDS[length]
    except KeyError:
        raise ValueError(f"no stock seed of length {length}; have {sorted(_KNOWN_SEEDS)}") from None
    return SeedPair(a, b)


def _as_float_tuple(values, m: int, name: str) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    if len(out) != m:
        raise ValueError(f"{name} must have {m} entries, got {len(out)}")
    return out


@dataclass(frozen=True)
class EncoderParams:
    """Full parameter set of the closed-form pair encoder.

    ``pi`` orders the block-index bits; ``e``/``e_prime`` are amplitude
    exponents (free reals); ``k``/``k_prime``/``k_dprime`` are phase steps,
    normalized into [0, H); ``d`` holds non-negative zero-padding amounts.
    """

    m: int
    H: int
    pi: tuple[int, ...]
    e: tuple[float, ...]
    e_prime: float
    k: tuple[float, ...]
    k_prime: float
    k_dprime: float
    d: tuple[int, ...]
    seed: SeedPair

    def __post_init__(self):
        m = int(self.m)
        if m < 1 or m > MAX_ENCODE_VARS:
            raise ValueError(f"m must be in 1..{MAX_ENCODE_VARS}")
        H = int(self.H)
        if H <= 0 or H % 2 != 0:
            raise ValueError(f"H must be a positive even integer, got {self.H}")
        pi = tuple(int(v) for v in self.pi)
        if sorted(pi) != list(range(1, m + 1)):
            raise ValueError(f"pi must be a permutation of 1..{m}, got {pi}")
        d = tuple(int(v) for v in self.d)
        if len(d) != m or any(v < 0 for v in d):
            raise ValueError("d must be m non-negative integers")
        seed = self.seed
        if not isinstance(seed, SeedPair):
            seed = SeedPair(*seed)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "e", _as_float_tuple(self.e, m, "e"))
        object.__setattr__(self, "e_prime", float(self.e_prime))
        object.__setattr__(self, "k", tuple(v % H for v in _as_float_tuple(self.k, m, "k")))
        object.__setattr__(self, "k_prime", float(self.k_prime) % H)
        object.__setattr__(self, "k_dprime", float(self.k_dprime) % H)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "seed", seed)

    @classmethod
    def basic(cls, m, H, pi=None, e=None, e_prime=0.0, k=None, k_prime=0.0,
              k_dprime=0.0, d=None, seed=None) -> "EncoderParams":
        """Build params with zero defaults and a trivial length-1 seed."""
        pi = tuple(pi) if pi is not None else tuple(range(1, m + 1))
        return cls(
            m=m,
            H=H,
            pi=pi,
            e=tuple(e) if e is not None else (0.0,) * m,
            e_prime=e_prime,
            k=tuple(k) if k is not None else (0.0,) * m,
            k_prime=k_prime,
            k_dprime=k_dprime,
            d=tuple(d) if d is not None else (0,) * m,
            seed=seed if seed is not None else known_seed(1),
        )

    def replace(self, **changes) -> "EncoderParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class RecursionParams:
    """Per-step knobs of the two-branch recursion.

    ``scale_a``/``scale_b`` are exponents of the real scalars, the three
    phase lists are steps on the H-th roots of unity, ``shifts`` pads the
    second operand, and ``psi`` orders the power-of-two spreading factors.
    """

    H: int
    psi: tuple[int, ...]
    scale_a: tuple[float, ...]
    scale_b: tuple[float, ...]
    phase_a: tuple[float, ...]
    phase_b: tuple[float, ...]
    phase_joint: tuple[float, ...]
    shifts: tuple[int, ...]
    seed: SeedPair

    def __post_init__(self):
        m = len(self.psi)
        H = int(self.H)
        if H <= 0 or H % 2 != 0:
            raise ValueError(f"H must be a positive even integer, got {self.H}")
        psi = tuple(int(v) for v in self.psi)
        if sorted(psi) != list(range(m)):
            raise ValueError(f"psi must be a permutation of 0..{m - 1}, got {psi}")
        shifts = tuple(int(v) for v in self.shifts)
        if len(shifts) != m or any(v < 0 for v in shifts):
            raise ValueError("shifts must be m non-negative integers")
        seed = self.seed
        if not isinstance(seed, SeedPair):
            seed = SeedPair(*seed)
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "scale_a", _as_float_tuple(self.scale_a, m, "scale_a"))
        object.__setattr__(self, "scale_b", _as_float_tuple(self.scale_b, m, "scale_b"))
        object.__setattr__(self, "phase_a", _as_float_tuple(self.phase_a, m, "phase_a"))
        object.__setattr__(self, "phase_b", _as_float_tuple(self.phase_b, m, "phase_b"))
        object.__setattr__(self, "phase_joint", _as_float_tuple(self.phase_joint, m, "phase_joint"))
        object.__setattr__(self, "shifts", shifts)
        object.__setattr__(self, "seed", seed)

    @property
    def m(self) -> int:
        return len(self.psi)

    @classmethod
    def neutral(cls, m, H, psi=None, seed=None, **overrides) -> "RecursionParams":
        """All-zero knobs; keyword overrides replace whole per-step lists."""
        fields = {
            "scale_a": (0.0,) * m,
            "scale_b": (0.0,) * m,
            "phase_a": (0.0,) * m,
            "phase_b": (0.0,) * m,
            "phase_joint": (0.0,) * m,
            "shifts": (0,) * m,
        }
        fields.update(overrides)
        return cls(
            H=H,
            psi=tuple(psi) if psi is not None else tuple(range(m)),
            seed=seed if seed is not None else known_seed(1),
            **fields,
        )


class ComponentFunctions(NamedTuple):
    """The five position functions driving the encoder."""

    amp_c: BooleanPolynomial
    amp_d: BooleanPolynomial
    phase_c: BooleanPolynomial
    phase_d: BooleanPolynomial
    shift: BooleanPolynomial


def component_functions(params: EncoderParams) -> ComponentFunctions:
    """Build the amplitude, phase, and shift functions of the block index.

    The mod-2 sums inside the amplitude functions and the parity inside the
    second phase function are expanded into exact multilinear form, so the
    tables can be read off directly.
    """
    p = params
    m = p.m
    half_h = p.H / 2.0
    var = lambda j: BooleanPolynomial.variable(m, j)
    one = BooleanPolynomial.constant(m, 1.0)

    x_last = var(p.pi[m - 1])
    pair_sum = BooleanPolynomial.constant(m, 0.0)
    for n in range(m - 1):
        pair_sum = pair_sum + xor_expand(var(p.pi[n]), var(p.pi[n + 1]), p.e[n])

    amp_c = p.e[m - 1] * x_last + pair_sum + p.e_prime
    amp_d = p.e[m - 1] * (one - x_last) + pair_sum + p.e_prime

    linear = BooleanPolynomial.constant(m, 0.0)
    for n in range(m):
        linear = linear + p.k[n] * var(p.pi[n])
    quad = BooleanPolynomial.constant(m, 0.0)
    for n in range(m - 1):
        quad = quad + var(p.pi[n]) * var(p.pi[n + 1])

    phase_c = half_h * quad + linear + p.k_prime
    # the second output wraps its sign terms mod 2 before the H/2 scaling
    parity = reduce(xor_expand, [var(p.pi[n]) * var(p.pi[n + 1]) for n in range(m - 1)], x_last)
    phase_d = half_h * parity + linear + p.k_dprime

    shift = BooleanPolynomial.constant(m, 0.0)
    for n in range(m):
        shift = shift + p.d[n] * var(p.pi[n])

    return ComponentFunctions(amp_c, amp_d, phase_c, phase_d, shift)


def order_select(params: EncoderParams, x) -> str:
    """Which seed a block uses: 'a' when the pi_1 bit of the index is 0."""
    if isinstance(x, (int, np.integer)):
        if not 0 <= x < (1 << params.m):
            raise ValueError(f"block index {x} out of range for m={params.m}")
        bit = (int(x) >> (params.m - params.pi[0])) & 1
    else:
        bits = tuple(int(v) for v in x)
        if len(bits) != params.m:
            raise ValueError(f"expected {params.m} bits")
        bit = bits[params.pi[0] - 1]
    return "a" if bit == 0 else "b"


class EncodedPair(NamedTuple):
    """Encoder output: the sequence pair plus an overlap diagnostic."""

    c: ComplexSequence
    d: ComplexSequence
    overlap: bool


def encode_pair(params: EncoderParams) -> EncodedPair:
    """Synthesize a complementary pair of length N * 2^m + sum(d).

    Each block index x contributes one copy of seed a or b, scaled by the
    amplitude/phase coefficient of that output, placed at degree offset
    shift(x) + x*N.  Colliding placements are summed, which keeps the pair
    complementary; ``overlap`` reports whether any collision happened.
    """
    p = params
    size = 1 << p.m
    comp = component_functions(p)
    amp_c = comp.amp_c.table()
    amp_d = comp.amp_d.table()
    phase_c = comp.phase_c.table()
    phase_d = comp.phase_d.table()
    offsets = np.rint(comp.shift.table()).astype(int)

    a = p.seed.a.values
    b = p.seed.b.values
    n_seed = len(a)
    total = n_seed * size + sum(p.d)
    c_out = np.zeros(total, dtype=complex)
    d_out = np.zeros(total, dtype=complex)
    occupancy = np.zeros(total, dtype=np.int32)

    for x in range(size):
        block = a if order_select(p, x) == "a" else b
        start = offsets[x] + x * n_seed
        c_out[start : start + n_seed] += block * UnitExpElement(amp_c[x], phase_c[x], p.H).to_complex()
        d_out[start : start + n_seed] += block * UnitExpElement(amp_d[x], phase_d[x], p.H).to_complex()
        occupancy[start : start + n_seed] += 1

    return EncodedPair(
        c=ComplexSequence(c_out),
        d=ComplexSequence(d_out),
        overlap=bool(np.any(occupancy > 1)),
    )


def run_recursion(params: RecursionParams) -> tuple[ComplexSequence, ComplexSequence]:
    """Literal polynomial evaluation of the two-branch recursion.

    Independent of the closed form: coefficients evolve step by step, with
    the second operand scaled, phase-rotated, and shifted by the padding
    plus N * 2^psi_n.  Serves as the oracle for ``encode_pair``.
    """
    rp = params
    w = 2.0 * math.pi / rp.H
    cur_a = rp.seed.a.values.astype(complex)
    cur_b = rp.seed.b.values.astype(complex)
    n_seed = len(cur_a)

    for n in range(rp.m):
        shift = rp.shifts[n] + n_seed * (1 << rp.psi[n])
        scale_a = math.exp(w * rp.scale_a[n])
        scale_b = math.exp(w * rp.scale_b[n])
        rot_a = cmath.exp(1j * w * rp.phase_a[n])
        rot_b = cmath.exp(1j * w * rp.phase_b[n])
        rot_joint = cmath.exp(1j * w * rp.phase_joint[n])

        length = max(len(cur_a), shift + len(cur_b))
        next_a = np.zeros(length, dtype=complex)
        next_b = np.zeros(length, dtype=complex)
        next_a[: len(cur_a)] = rot_a * scale_a * cur_a
        next_a[shift : shift + len(cur_b)] += rot_b * scale_b * rot_joint * cur_b
        next_b[: len(cur_a)] = np.conj(rot_b) * scale_b * cur_a
        next_b[shift : shift + len(cur_b)] -= np.conj(rot_a) * scale_a * rot_joint * cur_b
        cur_a, cur_b = next_a, next_b

    return ComplexSequence(cur_a), ComplexSequence(cur_b)


def recursion_to_encoder(params: RecursionParams) -> EncoderParams:
    """Translate recursion knobs into the equivalent closed-form parameters.

    The amplitude exponents become per-step differences plus a shared offset;
    phase steps telescope so neighbouring steps share their rotation history;
    the bit order flips from shift order to pi_n = m - psi_n.
    """
    rp = params
    m = rp.m
    e = tuple(rp.scale_b[n] - rp.scale_a[n] for n in range(m))
    e_prime = sum(rp.scale_a)
    k = [rp.phase_joint[0] + rp.phase_b[0] - rp.phase_a[0]]
    for n in range(1, m):
        k.append(
            rp.phase_joint[n]
            + rp.phase_b[n]
            - rp.phase_a[n]
            - rp.phase_b[n - 1]
            - rp.phase_a[n - 1]
        )
    k_prime = sum(rp.phase_a)
    k_dprime = -rp.phase_b[m - 1] + sum(rp.phase_a[: m - 1])
    return EncoderParams(
        m=m,
        H=rp.H,
        pi=tuple(m - p for p in rp.psi),
        e=e,
        e_prime=e_prime,
        k=tuple(k),
        k_prime=k_prime,
        k_dprime=k_dprime,
        d=rp.shifts,
        seed=rp.seed,
    )
