"""Scalar arithmetic back ends for the numerical kernels.

Two modes are available. Native mode computes with binary64 floats and complex
numbers. Compensated mode represents each real as an unevaluated sum ``hi + lo``
of two binary64 numbers with ``|lo| <= ulp(hi)/2`` (double-word arithmetic).
Addition and multiplication use error-free transformations (``two_sum``,
``two_prod`` through a fused multiply-add); transcendental functions are rounded
from mpmath evaluations at 110 bits.

Kernels never branch on the mode. They receive an ``Arithmetic`` object and call
its constructors and elementary functions, so the same algorithm runs at both
precisions and the two can be cross-validated.
"""

from __future__ import annotations

import cmath
import math
from enum import Enum
from fractions import Fraction
from functools import cache
from typing import TYPE_CHECKING, Any, Self

import mpmath
import numpy as np

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

MP_WORKING_BITS = 110

type RealLike = int | float | Fraction | str | DoubleWord


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Return ``(s, e)`` with ``s = fl(a + b)`` and ``a + b = s + e`` exactly."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def quick_two_sum(a: float, b: float) -> tuple[float, float]:
    """Return ``(s, e)`` with ``a + b = s + e`` exactly, assuming ``|a| >= |b|``."""
    s = a + b
    return s, b - (s - a)


def two_prod(a: float, b: float) -> tuple[float, float]:
    """Return ``(p, e)`` with ``p = fl(a * b)`` and ``a * b = p + e`` exactly."""
    p = a * b
    return p, math.fma(a, b, -p)


def _is_real_scalar(value: object) -> bool:
    return isinstance(value, int | float | np.integer | np.floating) and not isinstance(value, bool)


class DoubleWord:
    """A real number carried as the unevaluated sum of two binary64 values."""

    __slots__ = ("hi", "lo")

    hi: float
    lo: float

    def __init__(self: DoubleWord, hi: float, lo: float = 0.0) -> None:
        """Build a normalized double-word from two components."""
        self.hi, self.lo = quick_two_sum(float(hi), float(lo)) if abs(hi) >= abs(lo) else two_sum(hi, lo)

    @classmethod
    def coerce(cls: type[Self], value: RealLike) -> Self:
        """Convert an int, float, Fraction, decimal string or double-word."""
        match value:
            case DoubleWord():
                return value  # type: ignore[return-value]
            case Fraction():
                hi = float(value)
                return cls(hi, float(value - Fraction(hi)))
            case str():
                return cls.from_string(value)
            case int() if abs(value) > 2**53:
                return cls.coerce(Fraction(value))
            case _:
                return cls(float(value))

    @classmethod
    def from_string(cls: type[Self], text: str) -> Self:
        """Parse a decimal literal, keeping about 32 significant digits."""
        with mpmath.workprec(MP_WORKING_BITS):
            return cls.from_mpf(mpmath.mpf(text))

    @classmethod
    def from_mpf(cls: type[Self], value: mpmath.mpf) -> Self:
        """Round an mpmath number to double-word precision."""
        with mpmath.workprec(MP_WORKING_BITS):
            hi = float(value)
            if not math.isfinite(hi):
                return cls(hi)
            return cls(hi, float(value - mpmath.mpf(hi)))

    def to_mpf(self: DoubleWord) -> mpmath.mpf:
        """Return the exact value as an mpmath number."""
        with mpmath.workprec(MP_WORKING_BITS):
            return mpmath.mpf(self.hi) + mpmath.mpf(self.lo)

    def to_fraction(self: DoubleWord) -> Fraction:
        """Return the exact value as a rational."""
        return Fraction(self.hi) + Fraction(self.lo)

    # arithmetic

    def __add__(self: DoubleWord, other: object) -> DoubleWord:
        """Accurate double-word addition."""
        if isinstance(other, DoubleWord):
            s, e = two_sum(self.hi, other.hi)
            t, f = two_sum(self.lo, other.lo)
            e += t
            s, e = quick_two_sum(s, e)
            e += f
            return _make(*quick_two_sum(s, e))
        if _is_real_scalar(other):
            s, e = two_sum(self.hi, float(other))  # type: ignore[arg-type]
            e += self.lo
            return _make(*quick_two_sum(s, e))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self: DoubleWord) -> DoubleWord:
        """Negate both components."""
        return _make(-self.hi, -self.lo)

    def __pos__(self: DoubleWord) -> DoubleWord:
        """Return self."""
        return self

    def __sub__(self: DoubleWord, other: object) -> DoubleWord:
        """Subtract via negated addition."""
        if isinstance(other, DoubleWord):
            return self + (-other)
        if _is_real_scalar(other):
            return self + (-float(other))  # type: ignore[arg-type]
        return NotImplemented

    def __rsub__(self: DoubleWord, other: object) -> DoubleWord:
        """Subtract self from a plain scalar."""
        if _is_real_scalar(other):
            return (-self) + float(other)  # type: ignore[arg-type]
        return NotImplemented

    def __mul__(self: DoubleWord, other: object) -> DoubleWord:
        """Double-word product with a relative error below 2**-104."""
        if isinstance(other, DoubleWord):
            ch, cl1 = two_prod(self.hi, other.hi)
            tl0 = self.lo * other.lo
            tl1 = math.fma(self.hi, other.lo, tl0)
            cl2 = math.fma(self.lo, other.hi, tl1)
            return _make(*quick_two_sum(ch, cl1 + cl2))
        if _is_real_scalar(other):
            b = float(other)  # type: ignore[arg-type]
            ch, cl1 = two_prod(self.hi, b)
            cl3 = math.fma(self.lo, b, cl1)
            return _make(*quick_two_sum(ch, cl3))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self: DoubleWord, other: object) -> DoubleWord:
        """Long division with two correction quotients."""
        if _is_real_scalar(other):
            other = DoubleWord(float(other))  # type: ignore[arg-type]
        if not isinstance(other, DoubleWord):
            return NotImplemented
        if other.hi == 0.0:
            msg = "double-word division by zero"
            raise ZeroDivisionError(msg)
        q1 = self.hi / other.hi
        r = self - other * q1
        q2 = r.hi / other.hi
        r = r - other * q2
        q3 = r.hi / other.hi
        s, e = quick_two_sum(q1, q2)
        return DoubleWord(s, e) + q3

    def __rtruediv__(self: DoubleWord, other: object) -> DoubleWord:
        """Divide a plain scalar by self."""
        if _is_real_scalar(other):
            return DoubleWord(float(other)) / self  # type: ignore[arg-type]
        return NotImplemented

    def __pow__(self: DoubleWord, exponent: int) -> DoubleWord:
        """Integer power by repeated squaring."""
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return 1.0 / (self**-exponent)
        result, base = DoubleWord(1.0), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __abs__(self: DoubleWord) -> DoubleWord:
        """Absolute value."""
        return -self if self.hi < 0.0 or (self.hi == 0.0 and self.lo < 0.0) else self

    def sqrt(self: DoubleWord) -> DoubleWord:
        """Square root by one Newton correction of the binary64 root."""
        if self.hi < 0.0:
            msg = "square root of a negative double-word"
            raise ValueError(msg)
        if self.hi == 0.0:
            return DoubleWord(0.0)
        x = 1.0 / math.sqrt(self.hi)
        ax = self.hi * x
        residual = (self - DoubleWord(ax) * DoubleWord(ax)).hi
        return DoubleWord(ax) + residual * (x * 0.5)

    # comparisons

    def _key(self: DoubleWord, other: object) -> tuple[float, float] | None:
        if isinstance(other, DoubleWord):
            return other.hi, other.lo
        if _is_real_scalar(other):
            return float(other), 0.0  # type: ignore[arg-type]
        return None

    def __eq__(self: DoubleWord, other: object) -> bool:
        """Exact equality of the represented values."""
        key = self._key(other)
        return key is not None and (self.hi, self.lo) == key

    def __hash__(self: DoubleWord) -> int:
        """Hash consistent with float hashing when ``lo`` is zero."""
        return hash((self.hi, self.lo)) if self.lo else hash(self.hi)

    def __lt__(self: DoubleWord, other: object) -> bool:
        """Lexicographic comparison of normalized components."""
        key = self._key(other)
        if key is None:
            return NotImplemented
        return (self.hi, self.lo) < key

    def __le__(self: DoubleWord, other: object) -> bool:
        """Less than or equal."""
        key = self._key(other)
        if key is None:
            return NotImplemented
        return (self.hi, self.lo) <= key

    def __gt__(self: DoubleWord, other: object) -> bool:
        """Greater than."""
        key = self._key(other)
        if key is None:
            return NotImplemented
        return (self.hi, self.lo) > key

    def __ge__(self: DoubleWord, other: object) -> bool:
        """Greater than or equal."""
        key = self._key(other)
        if key is None:
            return NotImplemented
        return (self.hi, self.lo) >= key

    def __float__(self: DoubleWord) -> float:
        """Round to binary64."""
        return self.hi + self.lo

    def __repr__(self: DoubleWord) -> str:
        """Show both components."""
        return f"DoubleWord({self.hi!r}, {self.lo!r})"


def _make(hi: float, lo: float) -> DoubleWord:
    word = DoubleWord.__new__(DoubleWord)
    word.hi = hi
    word.lo = lo
    return word


class DoubleWordComplex:
    """A complex number with double-word real and imaginary parts."""

    __slots__ = ("imag", "real")

    real: DoubleWord
    imag: DoubleWord

    def __init__(self: DoubleWordComplex, real: RealLike, imag: RealLike = 0.0) -> None:
        """Build from real and imaginary parts."""
        self.real = DoubleWord.coerce(real)
        self.imag = DoubleWord.coerce(imag)

    @classmethod
    def coerce(cls: type[Self], value: object) -> Self:
        """Convert plain numbers, double-words and complex numbers."""
        match value:
            case DoubleWordComplex():
                return value  # type: ignore[return-value]
            case complex() | np.complexfloating():
                return cls(value.real, value.imag)  # type: ignore[union-attr]
            case _:
                return cls(value)  # type: ignore[arg-type]

    @classmethod
    def from_mpc(cls: type[Self], value: mpmath.mpc) -> Self:
        """Round an mpmath complex number."""
        return cls(DoubleWord.from_mpf(value.real), DoubleWord.from_mpf(value.imag))

    def to_mpc(self: DoubleWordComplex) -> mpmath.mpc:
        """Return the exact value as an mpmath complex number."""
        with mpmath.workprec(MP_WORKING_BITS):
            return mpmath.mpc(self.real.to_mpf(), self.imag.to_mpf())

    def _other(self: DoubleWordComplex, other: object) -> DoubleWordComplex | None:
        if isinstance(other, DoubleWordComplex):
            return other
        if isinstance(other, DoubleWord) or _is_real_scalar(other):
            return DoubleWordComplex(other, 0.0)  # type: ignore[arg-type]
        if isinstance(other, complex | np.complexfloating):
            return DoubleWordComplex(other.real, other.imag)
        return None

    def __add__(self: DoubleWordComplex, other: object) -> DoubleWordComplex:
        """Componentwise addition."""
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        return _make_complex(self.real + rhs.real, self.imag + rhs.imag)

    __radd__ = __add__

    def __neg__(self: DoubleWordComplex) -> DoubleWordComplex:
        """Negation."""
        return _make_complex(-self.real, -self.imag)

    def __pos__(self: DoubleWordComplex) -> DoubleWordComplex:
        """Return self."""
        return self

    def __sub__(self: DoubleWordComplex, other: object) -> DoubleWordComplex:
        """Componentwise subtraction."""
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        return _make_complex(self.real - rhs.real, self.imag - rhs.imag)

    def __rsub__(self: DoubleWordComplex, other: object) -> DoubleWordComplex:
        """Subtract self from a plain number."""
        lhs = self._other(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self: DoubleWordComplex, other: object) -> DoubleWordComplex:
        """Complex product."""
        if isinstance(other, DoubleWord) or _is_real_scalar(other):
            return _make_complex(self.real * other, self.imag * other)
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        return _make_complex(
            self.real * rhs.real - self.imag * rhs.imag,
            self.real * rhs.imag + self.imag * rhs.real,
        )

    __rmul__ = __mul__

    def __truediv__(self: DoubleWordComplex, other: object) -> DoubleWordComplex:
        """Complex quotient."""
        if isinstance(other, DoubleWord) or _is_real_scalar(other):
            return _make_complex(self.real / other, self.imag / other)
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        denominator = rhs.real * rhs.real + rhs.imag * rhs.imag
        return _make_complex(
            (self.real * rhs.real + self.imag * rhs.imag) / denominator,
            (self.imag * rhs.real - self.real * rhs.imag) / denominator,
        )

    def __rtruediv__(self: DoubleWordComplex, other: object) -> DoubleWordComplex:
        """Divide a plain number by self."""
        lhs = self._other(other)
        if lhs is None:
            return NotImplemented
        return lhs / self

    def __pow__(self: DoubleWordComplex, exponent: int) -> DoubleWordComplex:
        """Integer power by repeated squaring."""
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return 1.0 / (self**-exponent)
        result, base = DoubleWordComplex(1.0), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self: DoubleWordComplex) -> DoubleWordComplex:
        """Complex conjugate."""
        return _make_complex(self.real, -self.imag)

    def __abs__(self: DoubleWordComplex) -> DoubleWord:
        """Modulus."""
        return (self.real * self.real + self.imag * self.imag).sqrt()

    def __eq__(self: DoubleWordComplex, other: object) -> bool:
        """Exact equality."""
        rhs = self._other(other)
        return rhs is not None and self.real == rhs.real and self.imag == rhs.imag

    def __hash__(self: DoubleWordComplex) -> int:
        """Hash of the component pair."""
        return hash((self.real, self.imag))

    def __complex__(self: DoubleWordComplex) -> complex:
        """Round to binary64 components."""
        return complex(float(self.real), float(self.imag))

    def __repr__(self: DoubleWordComplex) -> str:
        """Show both parts."""
        return f"DoubleWordComplex({self.real!r}, {self.imag!r})"


def _make_complex(real: DoubleWord, imag: DoubleWord) -> DoubleWordComplex:
    value = DoubleWordComplex.__new__(DoubleWordComplex)
    value.real = real
    value.imag = imag
    return value


class Precision(str, Enum):
    """Scalar precision modes."""

    NATIVE = "native"
    COMPENSATED = "compensated"

    @classmethod
    def choices(cls: type[Self]) -> list[tuple[str, str]]:
        """Return (value, label) pairs."""
        return [(mode.value, mode.display_name) for mode in cls]

    @property
    def display_name(self: Self) -> str:
        """Return a human-readable name."""
        return {
            self.NATIVE: "Native 64-bit",
            self.COMPENSATED: "Compensated double-word",
        }[self]

    @classmethod
    def from_str(cls: type[Self], value: str) -> Self:
        """Convert a string to a precision mode."""
        try:
            return cls(value)
        except ValueError as e:
            msg = f"'{value}' is not a valid {cls.__name__}"
            raise ValueError(msg) from e

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


class NativeArithmetic:
    """Binary64 back end: plain floats, complex numbers and numpy arrays."""

    precision = Precision.NATIVE
    epsilon = 2.0**-52
    dtype = np.float64
    complex_dtype = np.complex128

    def real(self: NativeArithmetic, value: RealLike) -> float:
        """Convert to a real scalar."""
        return float(value) if not isinstance(value, str) else float(Fraction(value))

    def complex_scalar(self: NativeArithmetic, real: Any, imag: Any = 0.0) -> complex:
        """Build a complex scalar from two real parts."""
        return complex(float(real), float(imag))

    def coerce(self: NativeArithmetic, value: Any) -> Any:
        """Convert a plain real or complex number to this back end."""
        if isinstance(value, complex | np.complexfloating | DoubleWordComplex):
            return complex(value)
        return float(value)

    def vector(self: NativeArithmetic, values: Iterable[Any]) -> np.ndarray:
        """Pack values into a state vector."""
        items = [self.coerce(v) for v in values]
        is_complex = any(isinstance(v, complex) for v in items)
        return np.array(items, dtype=self.complex_dtype if is_complex else self.dtype)

    def zeros(self: NativeArithmetic, size: int, *, complex_: bool = False) -> np.ndarray:
        """Return a zero vector."""
        return np.zeros(size, dtype=self.complex_dtype if complex_ else self.dtype)

    @property
    def pi(self: NativeArithmetic) -> float:
        """Return pi."""
        return math.pi

    def sqrt(self: NativeArithmetic, x: Any) -> Any:
        """Square root; complex arguments take the principal branch."""
        return cmath.sqrt(x) if isinstance(x, complex) else math.sqrt(x)

    def exp(self: NativeArithmetic, x: Any) -> Any:
        """Exponential."""
        return cmath.exp(x) if isinstance(x, complex) else math.exp(x)

    def log(self: NativeArithmetic, x: Any) -> Any:
        """Principal logarithm."""
        return cmath.log(x) if isinstance(x, complex) else math.log(x)

    def sin(self: NativeArithmetic, x: Any) -> Any:
        """Sine."""
        return cmath.sin(x) if isinstance(x, complex) else math.sin(x)

    def cos(self: NativeArithmetic, x: Any) -> Any:
        """Cosine."""
        return cmath.cos(x) if isinstance(x, complex) else math.cos(x)

    def atan2(self: NativeArithmetic, y: Any, x: Any) -> float:
        """Two-argument arctangent in (-pi, pi]."""
        return math.atan2(y, x)

    def acos(self: NativeArithmetic, x: Any) -> float:
        """Arc cosine."""
        return math.acos(x)

    def to_float(self: NativeArithmetic, x: Any) -> float:
        """Round a real scalar to binary64."""
        return float(x)

    def to_complex(self: NativeArithmetic, x: Any) -> complex:
        """Round a scalar to a binary64 complex number."""
        return complex(x)

    def magnitude(self: NativeArithmetic, x: Any) -> float:
        """Return |x| as a float."""
        return abs(x)

    def magnitudes(self: NativeArithmetic, values: np.ndarray) -> np.ndarray:
        """Return elementwise moduli as a float array."""
        return np.abs(values)

    def isfinite(self: NativeArithmetic, x: Any) -> bool:
        """Return whether x is finite."""
        return cmath.isfinite(x) if isinstance(x, complex) else math.isfinite(x)

    def to_binary64(self: NativeArithmetic, values: np.ndarray) -> np.ndarray:
        """Return a binary64 copy of a state vector."""
        return np.array(values)


class CompensatedArithmetic(NativeArithmetic):
    """Double-word back end: object arrays of ``DoubleWord``/``DoubleWordComplex``."""

    precision = Precision.COMPENSATED
    epsilon = 2.0**-104
    dtype = np.object_
    complex_dtype = np.object_

    def real(self: CompensatedArithmetic, value: RealLike) -> DoubleWord:  # type: ignore[override]
        """Convert to a double-word."""
        return DoubleWord.coerce(value)

    def complex_scalar(self: CompensatedArithmetic, real: Any, imag: Any = 0.0) -> DoubleWordComplex:  # type: ignore[override]
        """Build a double-word complex number."""
        return DoubleWordComplex(real, imag)

    def coerce(self: CompensatedArithmetic, value: Any) -> Any:
        """Convert a plain real or complex number to this back end."""
        if isinstance(value, DoubleWord | DoubleWordComplex):
            return value
        if isinstance(value, complex | np.complexfloating):
            return DoubleWordComplex.coerce(value)
        return DoubleWord.coerce(value)

    def vector(self: CompensatedArithmetic, values: Iterable[Any]) -> np.ndarray:
        """Pack values into an object state vector."""
        items = [self.coerce(v) for v in values]
        out = np.empty(len(items), dtype=object)
        out[:] = items
        return out

    def zeros(self: CompensatedArithmetic, size: int, *, complex_: bool = False) -> np.ndarray:
        """Return a zero vector."""
        zero = DoubleWordComplex(0.0) if complex_ else DoubleWord(0.0)
        return self.vector([zero] * size)

    @property
    def pi(self: CompensatedArithmetic) -> DoubleWord:  # type: ignore[override]
        """Return pi to double-word accuracy."""
        return _dw_pi()

    def _unary(self: CompensatedArithmetic, fn: Callable[[Any], Any], x: Any) -> Any:
        if isinstance(x, DoubleWordComplex | complex):
            z = DoubleWordComplex.coerce(x)
            with mpmath.workprec(MP_WORKING_BITS):
                return DoubleWordComplex.from_mpc(fn(z.to_mpc()))
        word = DoubleWord.coerce(x)
        with mpmath.workprec(MP_WORKING_BITS):
            return DoubleWord.from_mpf(fn(word.to_mpf()))

    def sqrt(self: CompensatedArithmetic, x: Any) -> Any:
        """Square root; real arguments use the Newton-corrected kernel."""
        if isinstance(x, DoubleWordComplex | complex):
            return self._unary(mpmath.sqrt, x)
        return DoubleWord.coerce(x).sqrt()

    def exp(self: CompensatedArithmetic, x: Any) -> Any:
        """Exponential."""
        return self._unary(mpmath.exp, x)

    def log(self: CompensatedArithmetic, x: Any) -> Any:
        """Principal logarithm."""
        return self._unary(mpmath.log, x)

    def sin(self: CompensatedArithmetic, x: Any) -> Any:
        """Sine."""
        return self._unary(mpmath.sin, x)

    def cos(self: CompensatedArithmetic, x: Any) -> Any:
        """Cosine."""
        return self._unary(mpmath.cos, x)

    def atan2(self: CompensatedArithmetic, y: Any, x: Any) -> DoubleWord:  # type: ignore[override]
        """Two-argument arctangent in (-pi, pi]."""
        with mpmath.workprec(MP_WORKING_BITS):
            return DoubleWord.from_mpf(mpmath.atan2(DoubleWord.coerce(y).to_mpf(), DoubleWord.coerce(x).to_mpf()))

    def acos(self: CompensatedArithmetic, x: Any) -> DoubleWord:  # type: ignore[override]
        """Arc cosine."""
        return self._unary(mpmath.acos, x)

    def to_float(self: CompensatedArithmetic, x: Any) -> float:
        """Round a double-word to binary64."""
        return float(x)

    def to_complex(self: CompensatedArithmetic, x: Any) -> complex:
        """Round a double-word complex number to binary64."""
        return complex(x)

    def magnitude(self: CompensatedArithmetic, x: Any) -> float:
        """Return |x| rounded to binary64."""
        if isinstance(x, DoubleWordComplex):
            return math.hypot(float(x.real), float(x.imag))
        return abs(float(x))

    def magnitudes(self: CompensatedArithmetic, values: np.ndarray) -> np.ndarray:
        """Return elementwise moduli as a float array."""
        return np.array([self.magnitude(v) for v in values], dtype=np.float64)

    def isfinite(self: CompensatedArithmetic, x: Any) -> bool:
        """Return whether x is finite."""
        if isinstance(x, DoubleWordComplex):
            return math.isfinite(x.real.hi) and math.isfinite(x.imag.hi)
        if isinstance(x, DoubleWord):
            return math.isfinite(x.hi) and math.isfinite(x.lo)
        return cmath.isfinite(x)

    def to_binary64(self: CompensatedArithmetic, values: np.ndarray) -> np.ndarray:
        """Return a binary64 copy of a state vector."""
        if any(isinstance(v, DoubleWordComplex) for v in values):
            return np.array([complex(v) for v in values], dtype=np.complex128)
        return np.array([float(v) for v in values], dtype=np.float64)


type Arithmetic = NativeArithmetic | CompensatedArithmetic


@cache
def _dw_pi() -> DoubleWord:
    with mpmath.workprec(MP_WORKING_BITS):
        return DoubleWord.from_mpf(mpmath.pi)


@cache
def get_arithmetic(precision: Precision | str = Precision.NATIVE) -> Arithmetic:
    """Return the shared arithmetic back end for a precision mode."""
    mode = Precision.from_str(precision) if isinstance(precision, str) else precision
    return CompensatedArithmetic() if mode is Precision.COMPENSATED else NativeArithmetic()


def arithmetic_of(*values: Any) -> Arithmetic:
    """Pick the back end able to hold every value without rounding."""
    for value in values:
        if isinstance(value, DoubleWord | DoubleWordComplex):
            return get_arithmetic(Precision.COMPENSATED)
        if isinstance(value, np.ndarray) and value.dtype == np.object_:
            return get_arithmetic(Precision.COMPENSATED)
    return get_arithmetic(Precision.NATIVE)
