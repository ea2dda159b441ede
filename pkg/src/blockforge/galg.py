"""Group algebras over finite fields, with exact linear algebra.

Elements are dense coefficient vectors (table-encoded field codes) indexed
by group elements; at the sizes in play (|G| <= ~1000) dense is simpler and
faster than sparse bookkeeping.  Subspaces are reduced-row-echelon bases,
so membership and coordinates are exact.  The radical filtration uses the
fact that the augmentation ideal of kP is generated as a one-sided ideal
by the elements (g - 1) for the group generators g: each power is the span
of (g - 1) * (previous basis), which keeps the generating sets small.
"""

import numpy as np

from . import _kernels
from .ff import FieldElement


class AlgebraError(ValueError):
    pass


class GroupAlgebra:
    def __init__(self, group, field):
        self.group = group
        self.field = field
        self.n = group.order
        self._left_perm_cache = {}
        self._right_perm_cache = {}

    # -- element constructors -------------------------------------------------

    def zero(self):
        return AlgebraElement(self, np.zeros(self.n, dtype=np.uint16))

    def one(self):
        v = np.zeros(self.n, dtype=np.uint16)
        v[0] = 1
        return AlgebraElement(self, v)

    def group_elt(self, idx, coeff=1):
        v = np.zeros(self.n, dtype=np.uint16)
        v[idx] = self._code(coeff)
        return AlgebraElement(self, v)

    def from_terms(self, terms):
        v = np.zeros(self.n, dtype=np.uint16)
        for idx, coeff in terms.items():
            v[idx] = self.field.add(int(v[idx]), self._code(coeff))
        return AlgebraElement(self, v)

    def from_vector(self, vec):
        return AlgebraElement(self, np.asarray(vec, dtype=np.uint16).copy())

    def scalar(self, coeff):
        return self.group_elt(0, coeff)

    def _code(self, coeff):
        if isinstance(coeff, FieldElement):
            if coeff.spec != self.field:
                raise AlgebraError("field mismatch")
            return coeff.code
        return self.field.from_int(int(coeff))

    # -- fast translations ------------------------------------------------------

    def left_perm(self, g):
        """Permutation L with (g * a) = scatter of a by L."""
        if g not in self._left_perm_cache:
            self._left_perm_cache[g] = np.ascontiguousarray(self.group.table[g])
        return self._left_perm_cache[g]

    def right_perm(self, g):
        if g not in self._right_perm_cache:
            self._right_perm_cache[g] = np.ascontiguousarray(self.group.table[:, g])
        return self._right_perm_cache[g]

    def translate_left(self, vec, g):
        out = np.zeros_like(vec)
        out[self.left_perm(g)] = vec
        return out

    def translate_right(self, vec, g):
        out = np.zeros_like(vec)
        out[self.right_perm(g)] = vec
        return out

    def conj_vec(self, vec, h):
        """h * a * h^-1 as a coefficient vector."""
        return self.translate_right(self.translate_left(vec, h), self.group.inverse(h))

    def mul_vec(self, a, b):
        return _kernels.convolve(a, b, self.group.table, self.field.ADD, self.field.MUL)


class AlgebraElement:
    __slots__ = ("alg", "vec")

    def __init__(self, alg, vec):
        self.alg = alg
        self.vec = vec

    def _check(self, other):
        if other.alg is not self.alg and (
            other.alg.group is not self.alg.group or other.alg.field != self.alg.field
        ):
            raise AlgebraError("group/field mismatch")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.alg, self.alg.field.ADD[self.vec, other.vec])

    def __sub__(self, other):
        self._check(other)
        f = self.alg.field
        return AlgebraElement(self.alg, f.ADD[self.vec, f.NEG[other.vec]])

    def __neg__(self):
        return AlgebraElement(self.alg, self.alg.field.NEG[self.vec])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.alg, self.alg.mul_vec(self.vec, other.vec))
        code = self.alg._code(other)
        return AlgebraElement(self.alg, self.alg.field.MUL[code, self.vec])

    def __rmul__(self, other):
        # scalars commute; group elements use explicit products
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.alg.group is other.alg.group and np.array_equal(self.vec, other.vec)

    def __hash__(self):
        return hash((id(self.alg.group), self.vec.tobytes()))

    def is_zero(self):
        return not self.vec.any()

    def support(self):
        return [int(i) for i in np.nonzero(self.vec)[0]]

    def coeff(self, idx):
        return FieldElement(self.alg.field, int(self.vec[idx]))

    def augmentation(self):
        f = self.alg.field
        code = 0
        for i in self.support():
            code = f.add(code, int(self.vec[i]))
        return FieldElement(f, code)

    def terms(self):
        return {int(i): int(self.vec[i]) for i in np.nonzero(self.vec)[0]}

    def __repr__(self):
        f = self.alg.field
        parts = []
        for i in self.support():
            c = f.repr_code(int(self.vec[i]))
            name = self.alg.group.element_str(i)
            if c == "1":
                parts.append(name)
            elif "+" in c:
                parts.append(f"({c})*{name}")
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts) if parts else "0"


class Subspace:
    """Row space in reduced echelon form over the field."""

    def __init__(self, field, rows, pivots, ambient):
        self.field = field
        self.rows = rows
        self.pivots = list(pivots)
        self.ambient = ambient

    @classmethod
    def from_vectors(cls, field, vectors, ambient):
        if len(vectors) == 0:
            return cls(field, np.zeros((0, ambient), dtype=np.uint16), [], ambient)
        mat = np.array(vectors, dtype=np.uint16)
        rows, pivots = _kernels.rref(mat, field.ADD, field.MUL, field.NEG, field.INV)
        return cls(field, rows, pivots, ambient)

    @property
    def dim(self):
        return len(self.pivots)

    def residual(self, vec):
        res, _ = _kernels.reduce_vector(
            vec, self.rows, self.pivots, self.field.ADD, self.field.MUL,
            self.field.NEG, self.field.INV,
        )
        return res

    def contains(self, vec):
        return not self.residual(vec).any()

    def coordinates(self, vec):
        """Coefficients over the echelon rows, or None if not in the span."""
        res, coeffs = _kernels.reduce_vector(
            vec, self.rows, self.pivots, self.field.ADD, self.field.MUL,
            self.field.NEG, self.field.INV,
        )
        if res.any():
            return None
        return coeffs

    def extended(self, vectors):
        if not len(vectors):
            return self
        mat = np.vstack([self.rows, np.array(vectors, dtype=np.uint16)])
        rows, pivots = _kernels.rref(
            mat, self.field.ADD, self.field.MUL, self.field.NEG, self.field.INV
        )
        return Subspace(self.field, rows, pivots, self.ambient)

    def basis_vectors(self):
        return [self.rows[i] for i in range(self.dim)]

    def __le__(self, other):
        return all(other.contains(r) for r in self.rows)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


class FiltrationData:
    """Powers J^0 >= J^1 >= ... >= J^s = 0 with layer dimensions."""

    def __init__(self, subspaces):
        self.subspaces = subspaces  # subspaces[n] is J^n; last has dim 0
        self.layer_dims = [
            subspaces[i].dim - subspaces[i + 1].dim for i in range(len(subspaces) - 1)
        ]
        self.length = len(subspaces) - 1  # least s with J^s = 0

    def power(self, n):
        if n >= len(self.subspaces):
            return self.subspaces[-1]
        return self.subspaces[n]

    def degree_of(self, vec):
        """Largest n with vec in J^n; None for the zero vector."""
        if not np.asarray(vec).any():
            return None
        deg = 0
        for n in range(1, len(self.subspaces)):
            if self.subspaces[n].contains(vec):
                deg = n
            else:
                break
        return deg

    def hilbert_series(self):
        return list(self.layer_dims)


def radical_filtration(alg, p_generator_elts=None, max_steps=10000):
    """Radical powers of kG for G = P x| H with H of p'-order.

    `p_generator_elts` are the images in G of generators of P; J(kG) is the
    two-sided ideal they generate via (g - 1), and J = J(kP) kG since H has
    order coprime to p.  For kP itself pass the generators of P.
    """
    group, field = alg.group, alg.field
    if p_generator_elts is None:
        p_generator_elts = group.gen_elements()
    full = Subspace.from_vectors(
        field, np.eye(group.order, dtype=np.uint16), group.order
    )
    subspaces = [full]
    gens = [int(g) for g in p_generator_elts]
    current = _span_g_minus_one_times(alg, gens, full)
    subspaces.append(current)
    while current.dim > 0:
        nxt = _span_g_minus_one_times(alg, gens, current)
        if len(subspaces) > max_steps:
            raise AlgebraError("radical filtration did not terminate")
        if nxt.dim >= current.dim:
            raise AlgebraError("radical filtration is not strictly decreasing")
        subspaces.append(nxt)
        current = nxt
    return FiltrationData(subspaces)


def _span_g_minus_one_times(alg, gens, space):
    field = alg.field
    vecs = []
    for b in space.basis_vectors():
        for g in gens:
            shifted = alg.translate_left(b, g)
            vecs.append(field.ADD[shifted, field.NEG[b]])
    return Subspace.from_vectors(field, vecs, alg.n)


def invert_unit(a, max_index=None):
    """Inverse of lambda + n with lambda a nonzero scalar and n nilpotent."""
    alg = a.alg
    f = alg.field
    lam = a.augmentation()
    if lam.code == 0:
        raise AlgebraError("not a unit: augmentation is zero")
    n = max_index or alg.n + 1
    # a = lam(1 - x) with x = 1 - a/lam; inverse = lam^-1 (1 + x + x^2 + ...)
    x = alg.one() - a * lam.inverse()
    total = alg.one()
    power = x
    steps = 0
    while not power.is_zero():
        total = total + power
        power = power * x
        steps += 1
        if steps > n:
            raise AlgebraError("not a unit: non-scalar part is not nilpotent")
    return total * lam.inverse()


def express_in_basis(a, basis):
    """Coefficients of `a` over the given list of elements, in their order."""
    alg = a.alg
    f = alg.field
    n = alg.n
    k = len(basis)
    mat = np.zeros((k, n + k), dtype=np.uint16)
    for i, b in enumerate(basis):
        mat[i, :n] = b.vec
        mat[i, n + i] = 1
    rows, pivots = _kernels.rref(mat, f.ADD, f.MUL, f.NEG, f.INV)
    target = np.zeros(n + k, dtype=np.uint16)
    target[:n] = a.vec
    res, coeffs = _kernels.reduce_vector(
        target, rows, pivots, f.ADD, f.MUL, f.NEG, f.INV
    )
    if res[:n].any():
        raise AlgebraError("element is outside the span of the basis")
    # res tail holds -sum coeff_i e_i from the bookkeeping columns
    out = [FieldElement(f, f.neg(int(res[n + i]))) for i in range(k)]
    check = alg.zero()
    for c, b in zip(out, basis):
        check = check + b * c
    if check != a:
        raise AlgebraError("basis is not independent enough for unique coordinates")
    return out


def span_closure(alg, seeds, max_dim=None):
    """Subspace spanned by the unital algebra generated by `seeds`."""
    field = alg.field
    cap = max_dim or alg.n
    basis = Subspace.from_vectors(field, [s.vec for s in seeds], alg.n)
    frontier = basis.basis_vectors()
    while frontier:
        new = []
        for b in frontier:
            for s in seeds:
                for prod in (alg.mul_vec(b, s.vec), alg.mul_vec(s.vec, b)):
                    if not basis.contains(prod):
                        basis = basis.extended([prod])
                        new.append(prod)
        frontier = new
        if basis.dim > cap:
            raise AlgebraError("span closure exceeded the expected dimension")
    return basis
