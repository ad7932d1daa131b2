"""Order-2 jet (Taylor) arithmetic for exact derivative propagation.

A Jet2 carries a value together with its first and second derivatives with
respect to one scalar parameter.  Arithmetic follows the Leibniz rule and
compositions follow the chain rule, both to second order, so meridian
formulas evaluated on jets yield exact f, f', f'', g, g', g''.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass

from .errors import DomainError

_DIV_FLOOR = 1e-300


@dataclass(frozen=True, slots=True)
class Jet2:
    val: float
    d1: float
    d2: float

    @staticmethod
    def variable(u: float) -> "Jet2":
        """Identity lift: the parameter itself."""
        return Jet2(float(u), 1.0, 0.0)

    @staticmethod
    def const(c: float) -> "Jet2":
        return Jet2(float(c), 0.0, 0.0)

    def _coerce(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return other
        if isinstance(other, (int, float)):
            return Jet2(float(other), 0.0, 0.0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Jet2(self.val + o.val, self.d1 + o.d1, self.d2 + o.d2)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Jet2(self.val - o.val, self.d1 - o.d1, self.d2 - o.d2)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Jet2(-self.val, -self.d1, -self.d2)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Jet2(self.val * o.val,
                    self.d1 * o.val + self.val * o.d1,
                    self.d2 * o.val + 2.0 * self.d1 * o.d1 + self.val * o.d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if abs(o.val) < _DIV_FLOOR:
            raise DomainError("jet division by (near-)zero value")
        inv = 1.0 / o.val
        q = self.val * inv
        dq = (self.d1 - q * o.d1) * inv
        ddq = (self.d2 - 2.0 * dq * o.d1 - q * o.d2) * inv
        return Jet2(q, dq, ddq)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if isinstance(k, int) or (isinstance(k, float) and float(k).is_integer()):
            k = int(k)
            if k == 0:
                return Jet2(1.0, 0.0, 0.0)
            if k == 1:
                return self
            if k == 2:
                return self * self
            if self.val == 0.0 and k < 0:
                raise DomainError("negative power of zero")
            return _chain(self, self.val ** k,
                          k * self.val ** (k - 1),
                          k * (k - 1) * self.val ** (k - 2))
        return jpow(self, float(k))


def _chain(j: Jet2, f: float, df: float, ddf: float) -> Jet2:
    """2-jet of F(j) from the values F, F', F'' at j.val."""
    return Jet2(f, df * j.d1, ddf * j.d1 * j.d1 + df * j.d2)


def jsin(j: Jet2) -> Jet2:
    s, c = math.sin(j.val), math.cos(j.val)
    return _chain(j, s, c, -s)


def jcos(j: Jet2) -> Jet2:
    s, c = math.sin(j.val), math.cos(j.val)
    return _chain(j, c, -s, -c)


def jsinh(j: Jet2) -> Jet2:
    s, c = math.sinh(j.val), math.cosh(j.val)
    return _chain(j, s, c, s)


def jcosh(j: Jet2) -> Jet2:
    s, c = math.sinh(j.val), math.cosh(j.val)
    return _chain(j, c, s, c)


def jexp(j: Jet2) -> Jet2:
    e = math.exp(j.val)
    return _chain(j, e, e, e)


def jlog(j: Jet2) -> Jet2:
    if j.val <= 0.0:
        raise DomainError(f"log of non-positive value {j.val}")
    return _chain(j, math.log(j.val), 1.0 / j.val, -1.0 / (j.val * j.val))


def jsqrt(j: Jet2) -> Jet2:
    if j.val <= 0.0:
        raise DomainError(f"sqrt of non-positive value {j.val}")
    r = math.sqrt(j.val)
    return _chain(j, r, 0.5 / r, -0.25 / (j.val * r))


def jpow(j: Jet2, k: float) -> Jet2:
    """j**k for real exponent; requires a positive base."""
    if j.val <= 0.0:
        raise DomainError(f"real power of non-positive base {j.val}")
    f = j.val ** k
    return _chain(j, f, k * f / j.val, k * (k - 1.0) * f / (j.val * j.val))


def jarcsin(j: Jet2) -> Jet2:
    if abs(j.val) >= 1.0:
        raise DomainError(f"arcsin of value outside (-1, 1): {j.val}")
    w = 1.0 - j.val * j.val
    rw = math.sqrt(w)
    return _chain(j, math.asin(j.val), 1.0 / rw, j.val / (w * rw))


def jarctan(j: Jet2) -> Jet2:
    w = 1.0 + j.val * j.val
    return _chain(j, math.atan(j.val), 1.0 / w, -2.0 * j.val / (w * w))


_ELEMENTARY = {
    "sin": jsin,
    "cos": jcos,
    "sinh": jsinh,
    "cosh": jcosh,
    "exp": jexp,
    "log": jlog,
    "sqrt": jsqrt,
    "arcsin": jarcsin,
    "arctan": jarctan,
}


def jet_apply(fn: str, j: Jet2) -> Jet2:
    """Apply an elementary function by tag through the chain rule."""
    try:
        impl = _ELEMENTARY[fn]
    except KeyError:
        raise DomainError(f"unknown elementary function tag {fn!r}") from None
    return impl(j)


# ---------------------------------------------------------------------------
# Expression descriptors for user-supplied meridians.
#
# Custom families describe f(u), g(u) as plain arithmetic expressions, e.g.
# "u**2" or "sqrt(u*u - 4)".  The string is parsed once, validated against a
# small whitelist, and then evaluated on jets.

_ALLOWED_CALLS = set(_ELEMENTARY) | {"abs"}
_ALLOWED_NAMES = _ALLOWED_CALLS | {"u", "pi", "e"}
_ALLOWED_NODES = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.Call, ast.Name, ast.Load,
    ast.Constant, ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub,
    ast.UAdd,
)


class JetExpr:
    """Validated scalar expression in the variable u, evaluated on jets."""

    def __init__(self, text: str):
        self.text = text
        try:
            tree = ast.parse(text, mode="eval")
        except SyntaxError as exc:
            raise DomainError(f"cannot parse expression {text!r}: {exc}") from None
        for node in ast.walk(tree):
            if not isinstance(node, _ALLOWED_NODES):
                raise DomainError(
                    f"disallowed syntax {type(node).__name__} in {text!r}")
            if isinstance(node, ast.Name) and node.id not in _ALLOWED_NAMES:
                raise DomainError(f"unknown name {node.id!r} in {text!r}")
            if isinstance(node, ast.Call):
                if not isinstance(node.func, ast.Name) or node.func.id not in _ALLOWED_CALLS:
                    raise DomainError(f"disallowed call in {text!r}")
                if node.keywords or len(node.args) != 1:
                    raise DomainError(f"calls take exactly one argument in {text!r}")
            if isinstance(node, ast.Constant) and not isinstance(node.value, (int, float)):
                raise DomainError(f"non-numeric constant in {text!r}")
        self._code = compile(tree, "<meridian-expr>", "eval")

    def __call__(self, u: float) -> Jet2:
        env = {"u": Jet2.variable(u), "pi": math.pi, "e": math.e}
        env.update(_ELEMENTARY)
        env["abs"] = lambda j: j if j.val >= 0 else -j
        out = eval(self._code, {"__builtins__": {}}, env)
        if isinstance(out, (int, float)):
            return Jet2.const(float(out))
        return out

    def __repr__(self):
        return f"JetExpr({self.text!r})"
