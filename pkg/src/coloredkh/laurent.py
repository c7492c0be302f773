"""Integer-coefficient Laurent polynomials in one variable.

Used for Kauffman brackets (variable ``A``), Jones-type invariants and
graded Euler characteristics (variable ``q``).  Exact arithmetic only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Tuple


@dataclass(frozen=True)
class LaurentPoly:
    """A Laurent polynomial ``sum_e coeffs[e] * var^e`` with int coefficients.

    Invariant: no zero coefficients are stored.
    """

    coeffs: Tuple[Tuple[int, int], ...] = ()
    var: str = "q"

    @staticmethod
    def from_dict(d: Mapping[int, int], var: str = "q") -> "LaurentPoly":
        return LaurentPoly(tuple(sorted((e, c) for e, c in d.items() if c != 0)), var)

    @staticmethod
    def zero(var: str = "q") -> "LaurentPoly":
        return LaurentPoly((), var)

    @staticmethod
    def one(var: str = "q") -> "LaurentPoly":
        return LaurentPoly(((0, 1),), var)

    @staticmethod
    def monomial(exp: int, coeff: int = 1, var: str = "q") -> "LaurentPoly":
        if coeff == 0:
            return LaurentPoly.zero(var)
        return LaurentPoly(((exp, coeff),), var)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.coeffs)

    def _check_var(self, other: "LaurentPoly") -> None:
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_var(other)
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d, self.var)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.coeffs), self.var)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly.zero(self.var)
            return LaurentPoly(tuple((e, c * other) for e, c in self.coeffs), self.var)
        self._check_var(other)
        d: Dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(d, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers of polynomials are not supported")
        out = LaurentPoly.one(self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by var^k."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.coeffs), self.var)

    def invert_var(self) -> "LaurentPoly":
        """Substitute var -> var^(-1)."""
        return LaurentPoly(tuple(sorted((-e, c) for e, c in self.coeffs)), self.var)

    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no exponents")
        return self.coeffs[0][0]

    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no exponents")
        return self.coeffs[-1][0]

    def span(self) -> int:
        return self.max_exp() - self.min_exp()

    def evaluate(self, x: int) -> int:
        """Evaluate at a nonzero integer (exact; negative exponents must clear)."""
        if x == 0:
            raise ValueError("cannot evaluate a Laurent polynomial at 0")
        num = 0
        min_e = min((e for e, _ in self.coeffs), default=0)
        for e, c in self.coeffs:
            num += c * x ** (e - min_e)
        if min_e >= 0:
            return num * x ** min_e
        den = x ** (-min_e)
        if num % den:
            raise ValueError("evaluation is not an integer")
        return num // den

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Divide exactly by ``other``; raises ValueError on nonzero remainder."""
        self._check_var(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return LaurentPoly.zero(self.var)
        rem = self.as_dict()
        div = other.coeffs
        lead_e, lead_c = div[-1]
        out: Dict[int, int] = {}
        # cancel leading terms downward; exponents stay bounded
        while rem:
            e = max(rem)
            c = rem[e]
            if c % lead_c:
                raise ValueError("not divisible (coefficient)")
            qe, qc = e - lead_e, c // lead_c
            out[qe] = out.get(qe, 0) + qc
            for de, dc in div:
                ne = de + qe
                nc = rem.get(ne, 0) - dc * qc
                if nc:
                    rem[ne] = nc
                elif ne in rem:
                    del rem[ne]
        return LaurentPoly.from_dict(out, self.var)

    def map_square_to(self, var: str, base_exp: int, sign_alternates: bool) -> "LaurentPoly":
        """Substitute self(var_old) with var_old^2 -> s * new^base_exp.

        Requires all exponents even.  With ``sign_alternates`` the image of
        var_old^(2m) is (-1)^m new^(m*base_exp); used for A^2 -> -q^(-1).
        """
        d: Dict[int, int] = {}
        for e, c in self.coeffs:
            if e % 2:
                raise ValueError(f"odd exponent {e}; substitution undefined")
            m = e // 2
            s = -1 if (sign_alternates and m % 2) else 1
            ne = m * base_exp
            d[ne] = d.get(ne, 0) + s * c
        return LaurentPoly.from_dict(d, var)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.coeffs:
            if e == 0:
                term = str(abs(c))
            else:
                mag = abs(c)
                head = "" if mag == 1 else f"{mag}*"
                term = f"{head}{self.var}^{e}" if e != 1 else f"{head}{self.var}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def to_json(self) -> list:
        return [[e, c] for e, c in self.coeffs]
