"""Dimension subgroups, the graded restricted Lie algebra of a p-group,
and the PBW straightening engine for its restricted enveloping algebra.

The dimension subgroups are computed by the definitional membership test
g - 1 in J^r(kP).  The graded Lie algebra lives inside the associated
graded of kP: degree-r part = span of the classes of (g - 1), g in F_r.
Brackets and p-th powers are additive commutators and p-th powers of
representatives in kP, read off in the next layer, so no structure
constant is ever assumed: everything is measured in the group algebra.

Basis conventions (these pin down every scalar the pipeline emits):
degree-one basis vectors are reduced-echelon eigenvectors of the H-action,
eigenspaces ordered by descending character-exponent tuples; in degree two
and higher the basis is built structurally, adopting brackets [w_i, w_j]
and p-th powers of earlier basis elements in lexicographic candidate
order.  All representatives are exact H-eigenvectors in kP (the degree-one
ones by character averaging), so the same table drives both the graded and
the ungraded stages.
"""

import numpy as np

from .ff import FieldElement, min_extension_degree
from .galg import AlgebraError, GroupAlgebra, Subspace, radical_filtration


class JenningsError(ValueError):
    pass


class DimensionSeries:
    def __init__(self, subgroups, p):
        self.subgroups = subgroups  # F_1, F_2, ..., final entry {1}
        self.p = p
        self.layer_ranks = []
        for r in range(len(subgroups) - 1):
            quot = len(subgroups[r]) // len(subgroups[r + 1])
            rank = 0
            while quot > 1:
                quot //= p
                rank += 1
            self.layer_ranks.append(rank)

    def __len__(self):
        return len(self.subgroups)

    def subgroup(self, r):
        if r - 1 >= len(self.subgroups):
            return self.subgroups[-1]
        return self.subgroups[r - 1]


def dimension_subgroups(P, field, filt=None):
    """F_r(P) = {g : g - 1 in J^r(kP)} until the series reaches 1."""
    p = field.p
    if any(o % p for o in P.pres.orders):
        raise JenningsError("P is not a p-group for the field characteristic")
    alg = GroupAlgebra(P, field)
    if filt is None:
        filt = radical_filtration(alg)
    series = []
    r = 1
    while True:
        members = []
        sub = filt.power(r)
        for g in range(P.order):
            vec = alg.group_elt(g).vec.copy()
            vec[0] = field.add(int(vec[0]), field.neg(1))
            if not vec.any() or sub.contains(vec):
                members.append(g)
        series.append(members)
        if len(members) == 1:
            break
        r += 1
    sizes = [len(m) for m in series]
    for a, b in zip(sizes, sizes[1:]):
        if a % b:
            raise JenningsError("dimension subgroup chain is not a subgroup chain")
    return DimensionSeries(series, p)


class LayerContext:
    """Quotient coordinates for the layers J^r / J^{r+1} of kP."""

    def __init__(self, alg, filt):
        self.alg = alg
        self.filt = filt
        self._complements = {}

    def complement(self, r):
        """Canonical complement rows to J^{r+1} inside J^r."""
        if r not in self._complements:
            field = self.alg.field
            jr = self.filt.power(r)
            jr1 = self.filt.power(r + 1)
            residuals = [jr1.residual(row) for row in jr.rows]
            comp = Subspace.from_vectors(field, residuals, self.alg.n)
            assert comp.dim == jr.dim - jr1.dim
            self._complements[r] = comp
        return self._complements[r]

    def coords(self, vec, r):
        """Coordinates of vec + J^{r+1} over the complement basis, or None."""
        res = self.filt.power(r + 1).residual(vec)
        if not res.any():
            return np.zeros(self.complement(r).dim, dtype=np.uint16)
        return self.complement(r).coordinates(res)

    def lift(self, coords, r):
        comp = self.complement(r)
        field = self.alg.field
        out = np.zeros(self.alg.n, dtype=np.uint16)
        for c, row in zip(coords, comp.rows):
            if c:
                out = field.ADD[out, field.MUL[int(c), row]]
        return out


class RestrictedLieData:
    """Homogeneous H-eigenbasis of the graded Lie algebra with its constants."""

    def __init__(self, field, P, H, degrees, reps, psi, c, d, structure):
        self.field = field
        self.P = P
        self.H = H
        self.degrees = degrees
        self.reps = reps  # exact eigenvector representatives in kP
        self.psi = psi  # (m, |H|) character value tables, codes
        self.c = c  # {(i, j): {k: code}} for i < j
        self.d = d  # {i: {k: code}}
        self.structure = structure  # {k: ("bracket", i, j) | ("power", i)}

    @property
    def m(self):
        return len(self.degrees)

    def bracket_constants(self, i, j):
        if i == j:
            return {}
        if i < j:
            return self.c.get((i, j), {})
        f = self.field
        return {k: f.neg(v) for k, v in self.c.get((j, i), {}).items()}

    def power_constants(self, i):
        return self.d.get(i, {})

    def character(self, i):
        return self.psi[i]

    def psi_value(self, i, h):
        return int(self.psi[i, h])

    def degree_one_indices(self):
        return [i for i in range(self.m) if self.degrees[i] == 1]

    def char_product(self, indices):
        f = self.field
        out = np.ones(self.H.order, dtype=np.uint16)
        for i in indices:
            out = f.MUL[out, self.psi[i]]
        return out


def _eigen_split(field, basis_rows, operator, unit_order, p):
    """Split the row space of basis_rows into eigenspaces of the operator."""
    dim = len(basis_rows)
    if dim == 0:
        return []
    space = Subspace.from_vectors(field, basis_rows, basis_rows.shape[1])
    # operator in the coordinates of `space`
    op_rows = []
    for row in space.rows:
        img = _apply_operator(field, row, operator)
        coords = space.coordinates(img)
        if coords is None:
            raise JenningsError("operator does not preserve the eigenspace")
        op_rows.append(coords)
    op_mat = np.array(op_rows, dtype=np.uint16)
    pieces = []
    total = 0
    for lam in _roots_of_x_pow(field, unit_order):
        shifted = field.ADD[op_mat, _scaled_identity(field, dim, field.neg(lam))]
        kernel = _left_kernel(field, shifted)
        if kernel.shape[0]:
            vecs = _mat_mul(field, kernel, space.rows)
            pieces.append((lam, vecs))
            total += kernel.shape[0]
    if total != dim:
        raise JenningsError(
            "H-action not diagonalizable over this field; extend the field "
            f"(need roots of unity of order {unit_order}, degree "
            f"{min_extension_degree(field.p, _prime_to_p(unit_order, field.p))})"
        )
    return pieces


def _prime_to_p(m, p):
    while m % p == 0:
        m //= p
    return m


def _roots_of_x_pow(field, e):
    return [c for c in field.elements() if c != 0 and field.pow(c, e) == 1]


def _scaled_identity(field, dim, code):
    out = np.zeros((dim, dim), dtype=np.uint16)
    np.fill_diagonal(out, code)
    return out


def _apply_operator(field, row, operator):
    out = np.zeros(operator.shape[1], dtype=np.uint16)
    for t in np.nonzero(row)[0]:
        out = field.ADD[out, field.MUL[int(row[t]), operator[t]]]
    return out


def _mat_mul(field, a, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint16)
    for i in range(a.shape[0]):
        out[i] = _apply_operator(field, a[i], b)
    return out


def _left_kernel(field, mat):
    n, m = mat.shape
    from . import _kernels

    aug = np.zeros((n, m + n), dtype=np.uint16)
    aug[:, :m] = mat
    for i in range(n):
        aug[i, m + i] = 1
    rows, pivots = _kernels.rref(aug, field.ADD, field.MUL, field.NEG, field.INV)
    kern = [rows[t, m:] for t, piv in enumerate(pivots) if piv >= m]
    return (
        np.array(kern, dtype=np.uint16) if kern else np.zeros((0, n), dtype=np.uint16)
    )


def lie_data(P, H, action, field, filt=None, series=None):
    """Graded Lie data of P with the H-eigenbasis; see the module docstring."""
    alg = GroupAlgebra(P, field)
    if filt is None:
        filt = radical_filtration(alg)
    if series is None:
        series = dimension_subgroups(P, field, filt)
    layers = LayerContext(alg, filt)

    # conjugation of kP vectors by h in H goes through the action permutation
    def conj_by_h(vec, h):
        out = np.zeros_like(vec)
        out[action.alpha[h]] = vec
        return out

    alg_conj = conj_by_h

    hn = H.order
    entries = []  # (degree, char_key, pivot, rep_vec, psi_table, structure)

    chosen_by_degree = {}

    def adopt(degree, rep_vec, structure):
        psi_tab = _character_of(field, alg_conj, filt, rep_vec, degree, hn)
        entries.append([degree, None, None, rep_vec, psi_tab, structure])

    top = len(series.subgroups)
    for r in range(1, top):
        members = series.subgroup(r)
        if len(members) == 1:
            break
        d_r = series.layer_ranks[r - 1]
        # span of the classes (g - 1) inside the layer
        coords_list = []
        for g in members:
            vec = alg.group_elt(g).vec.copy()
            vec[0] = field.add(int(vec[0]), field.neg(1))
            cc = layers.coords(vec, r)
            assert cc is not None
            coords_list.append(cc)
        jen_sub = Subspace.from_vectors(
            field, coords_list, layers.complement(r).dim
        )
        if jen_sub.dim != d_r:
            raise JenningsError("Jennings layer dimension mismatch")
        if r == 1:
            pieces = [(None, jen_sub.rows)]
            for hg in H.gen_elements():
                op = _conj_operator_from(field, alg_conj, layers, r, hg)
                new_pieces = []
                for tag, rows in pieces:
                    for lam, vecs in _eigen_split(
                        field, rows, op, H.element_order(hg) if hg else 1, field.p
                    ):
                        key = (tag or ()) + (lam,)
                        new_pieces.append((key, vecs))
                pieces = new_pieces
            # canonical ordering: descending character tuple, then pivots
            keyed = []
            for tag, rows in pieces:
                sub = Subspace.from_vectors(field, rows, rows.shape[1])
                key = _char_sort_key(field, tag)
                keyed.append((key, sub))
            keyed.sort(key=lambda t: t[0])
            for _, sub in keyed:
                for row in sub.rows:
                    lifted = layers.lift(row, r)
                    rep = _average_eigenvector(
                        field, alg_conj, lifted, r, layers, hn, H
                    )
                    adopt(r, rep, ("generator",))
            chosen = Subspace.from_vectors(
                field,
                [layers.coords(e[3], r) for e in entries if e[0] == r],
                layers.complement(r).dim,
            )
            chosen_by_degree[r] = chosen
        else:
            # structural basis: brackets and p-th powers of earlier elements
            candidates = []
            for a in range(len(entries)):
                for b in range(a + 1, len(entries)):
                    if entries[a][0] + entries[b][0] == r:
                        candidates.append(("bracket", a, b))
            for a in range(len(entries)):
                if field.p * entries[a][0] == r:
                    candidates.append(("power", a))
            chosen = Subspace.from_vectors(field, [], layers.complement(r).dim)
            adopted = []
            for cand in candidates:
                vec = _structural_vector(alg, entries, cand)
                cc = layers.coords(vec, r)
                if cc is None:
                    raise JenningsError("structural candidate escaped its layer")
                if not cc.any() or chosen.contains(cc):
                    continue
                chosen = chosen.extended([cc])
                adopted.append((cand, vec, cc))
                if chosen.dim == d_r:
                    break
            if chosen.dim != d_r:
                raise JenningsError(
                    "degree-one elements do not generate; not a Jennings layer"
                )
            if not jen_sub <= chosen:
                raise JenningsError("structural basis does not span the layer")
            # order by (char desc, pivot)
            keyed = []
            for cand, vec, cc in adopted:
                psi_tab = _character_of(field, alg_conj, filt, vec, r, hn)
                key = _char_sort_key(
                    field, tuple(int(psi_tab[h]) for h in H.gen_elements())
                )
                keyed.append((key, tuple(int(x) for x in cc), cand, vec))
            keyed.sort(key=lambda t: (t[0], t[1]))
            for _, _, cand, vec in keyed:
                adopt(r, vec, cand)
            chosen_by_degree[r] = chosen

    degrees = [e[0] for e in entries]
    reps = [e[3] for e in entries]
    psi = np.array([e[4] for e in entries], dtype=np.uint16)
    structure = {
        k: e[5] for k, e in enumerate(entries) if e[5] and e[5][0] != "generator"
    }

    # structure constants, measured in kP
    c = {}
    d = {}
    mlen = len(entries)
    for i in range(mlen):
        for j in range(i + 1, mlen):
            deg = degrees[i] + degrees[j]
            elem = field.ADD[
                alg.mul_vec(reps[i], reps[j]),
                field.NEG[alg.mul_vec(reps[j], reps[i])],
            ]
            consts = _expand_in_degree(field, alg, layers, filt, entries, elem, deg)
            if consts:
                c[(i, j)] = consts
        deg = field.p * degrees[i]
        elem = reps[i]
        for _ in range(field.p - 1):
            elem = alg.mul_vec(elem, reps[i])
        consts = _expand_in_degree(field, alg, layers, filt, entries, elem, deg)
        if consts:
            d[i] = consts

    data = RestrictedLieData(field, P, H, degrees, reps, psi, c, d, structure)
    _verify_character_compat(data)
    return data


def _conj_operator_from(field, conj, layers, r, h):
    comp = layers.complement(r)
    rows = []
    for row in comp.rows:
        img = conj(row, h)
        cc = layers.coords(img, r)
        assert cc is not None
        rows.append(cc)
    return (
        np.array(rows, dtype=np.uint16)
        if rows
        else np.zeros((0, comp.dim), dtype=np.uint16)
    )


def _character_of(field, conj, filt, vec, degree, hn):
    """psi(h) for an exact eigenvector, verified for every h."""
    lead = int(np.nonzero(vec)[0][0])
    inv_lead = field.inv(int(vec[lead]))
    table = np.zeros(hn, dtype=np.uint16)
    for h in range(hn):
        img = conj(vec, h)
        lam = field.mul(int(img[lead]), inv_lead)
        if not np.array_equal(img, field.MUL[lam, vec]):
            raise JenningsError("representative is not an exact H-eigenvector")
        table[h] = lam
    return table


def _average_eigenvector(field, conj, vec, degree, layers, hn, H):
    """Project a layer representative to an exact eigenvector by averaging."""
    # determine the character on the layer first
    cc = layers.coords(vec, degree)
    lead_ok = cc is not None and cc.any()
    assert lead_ok
    psi = np.zeros(hn, dtype=np.uint16)
    lead = int(np.nonzero(cc)[0][0])
    inv_lead = field.inv(int(cc[lead]))
    for h in range(hn):
        img_cc = layers.coords(conj(vec, h), degree)
        psi[h] = field.mul(int(img_cc[lead]), inv_lead)
    inv_hn = field.inv(field.from_int(hn))
    acc = np.zeros_like(vec)
    for h in range(hn):
        term = field.MUL[field.inv(int(psi[h])), conj(vec, h)]
        acc = field.ADD[acc, term]
    acc = field.MUL[inv_hn, acc]
    assert np.array_equal(layers.coords(acc, degree), cc)
    return acc


def _char_sort_key(field, values):
    """Descending-lex key for a tuple of root-of-unity codes."""
    exps = []
    for code in values:
        order = field.element_order(code) if code != 1 else 1
        zeta = field.root_of_unity(order) if order > 1 else 1
        k, cur = 0, 1
        while cur != code:
            cur = field.mul(cur, zeta)
            k += 1
        # scale exponent to a common denominator so keys compare consistently
        exps.append(-k * ((field.q - 1) // order) if order > 1 else 0)
    return tuple(exps)


def _structural_vector(alg, entries, cand):
    field = alg.field
    if cand[0] == "bracket":
        _, a, b = cand
        return field.ADD[
            alg.mul_vec(entries[a][3], entries[b][3]),
            field.NEG[alg.mul_vec(entries[b][3], entries[a][3])],
        ]
    _, a = cand
    out = entries[a][3]
    for _ in range(field.p - 1):
        out = alg.mul_vec(out, entries[a][3])
    return out


def _expand_in_degree(field, alg, layers, filt, entries, elem, deg):
    """Constants of elem over the degree-`deg` basis classes; {} if elem = 0."""
    if not elem.any():
        return {}
    if deg >= filt.length:
        raise JenningsError("nonzero product beyond the radical length")
    if not filt.power(deg).contains(elem):
        raise JenningsError("product not in the expected radical power")
    cc = layers.coords(elem, deg)
    if cc is None:
        raise JenningsError("product has components above its degree")
    if not cc.any():
        return {}
    idxs = [k for k, e in enumerate(entries) if e[0] == deg]
    basis = [layers.coords(entries[k][3], deg) for k in idxs]
    sub_rows = np.array(basis, dtype=np.uint16)
    sub = Subspace.from_vectors(field, sub_rows, sub_rows.shape[1])
    # solve over the original (non-echelon) basis via bookkeeping columns
    n = sub_rows.shape[1]
    k = len(idxs)
    aug = np.zeros((k, n + k), dtype=np.uint16)
    aug[:, :n] = sub_rows
    for t in range(k):
        aug[t, n + t] = 1
    from . import _kernels

    rows, pivots = _kernels.rref(aug, field.ADD, field.MUL, field.NEG, field.INV)
    target = np.zeros(n + k, dtype=np.uint16)
    target[:n] = cc
    res, _ = _kernels.reduce_vector(
        target, rows, pivots, field.ADD, field.MUL, field.NEG, field.INV
    )
    if res[:n].any():
        raise JenningsError("layer class escapes the span of the basis")
    out = {}
    for t in range(k):
        code = field.neg(int(res[n + t]))
        if code:
            out[idxs[t]] = code
    return out


def _verify_character_compat(data):
    f = data.field
    for (i, j), consts in data.c.items():
        prod = f.MUL[data.psi[i], data.psi[j]]
        for k in consts:
            if not np.array_equal(prod, data.psi[k]):
                raise JenningsError("bracket constants violate character grading")
            if data.degrees[k] != data.degrees[i] + data.degrees[j]:
                raise JenningsError("bracket constants violate degree grading")
    for i, consts in data.d.items():
        powed = np.ones(data.H.order, dtype=np.uint16)
        for _ in range(f.p):
            powed = f.MUL[powed, data.psi[i]]
        for k in consts:
            if not np.array_equal(powed, data.psi[k]):
                raise JenningsError("p-power constants violate character grading")
            if data.degrees[k] != f.p * data.degrees[i]:
                raise JenningsError("p-power constants violate degree grading")


class EnvelopingAlgebra:
    """PBW monomials and straightening for the restricted enveloping algebra.

    Monomials are nondecreasing index tuples with each index repeated at
    most p-1 times; the empty tuple is the identity.  Rewriting uses
    w_j w_i = w_i w_j - sum_k c_{i,j,k} w_k   (i < j)
    and replaces p-fold repetitions via the p-power constants.
    """

    def __init__(self, lie):
        self.lie = lie
        self.field = lie.field
        self.p = lie.field.p
        self._memo = {}
        self._monomials = None

    def degree(self, mono):
        return sum(self.lie.degrees[i] for i in mono)

    def monomials(self):
        if self._monomials is None:
            monos = [()]
            for i in range(self.lie.m):
                monos = [m + (i,) * e for m in monos for e in range(self.p)]
            monos.sort(key=lambda m: (self.degree(m), m))
            self._monomials = monos
        return self._monomials

    def straighten(self, word):
        """Normal form of a product of basis letters, as {monomial: code}."""
        word = tuple(word)
        cached = self._memo.get(word)
        if cached is not None:
            return dict(cached)
        result = self._straighten_uncached(word)
        self._memo[word] = dict(result)
        return result

    def _straighten_uncached(self, word):
        f = self.field
        run = 1
        for t in range(len(word) - 1):
            if word[t] > word[t + 1]:
                i, j = word[t + 1], word[t]
                out = {}
                base = word[:t] + (i, j) + word[t + 2 :]
                _acc(out, self.straighten(base), 1, f)
                for k, code in self.lie.bracket_constants(i, j).items():
                    tail = word[:t] + (k,) + word[t + 2 :]
                    _acc(out, self.straighten(tail), f.neg(code), f)
                return out
            run = run + 1 if word[t] == word[t + 1] else 1
            if run == self.p:
                i = word[t]
                start = t + 1 - self.p
                out = {}
                for k, code in self.lie.power_constants(i).items():
                    tail = word[:start] + (k,) + word[t + 2 :]
                    _acc(out, self.straighten(tail), code, f)
                return out
        return {word: 1}

    def mult(self, u, v):
        return self.straighten(tuple(u) + tuple(v))

    def elem_mult(self, a, b):
        """Product of two {monomial: code} elements."""
        f = self.field
        out = {}
        for mu, cu in a.items():
            for mv, cv in b.items():
                code = f.mul(cu, cv)
                if code:
                    _acc(out, self.mult(mu, mv), code, f)
        return out

    def char_of_monomial(self, mono):
        return self.lie.char_product(mono)


def _acc(target, terms, scale, field):
    for mono, code in terms.items():
        val = field.add(target.get(mono, 0), field.mul(scale, code))
        if val:
            target[mono] = val
        else:
            target.pop(mono, None)


def hilbert_product(jen_dims, p):
    """Coefficients of prod_r ((1 - t^{pr}) / (1 - t^r))^{dim Jen_r}."""
    out = [1]
    for r, dim in jen_dims.items():
        factor = [0] * ((p - 1) * r + 1)
        for a in range(p):
            factor[a * r] = 1
        for _ in range(dim):
            out = _poly_mul_int(out, factor)
    return out


def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def jennings_quillen_check(lie, filt, uea=None):
    """Certify the layerwise isomorphism from the enveloping algebra onto
    the associated graded of kP: bijective per layer, multiplicative on all
    basis pairs.  Returns a report dict; raises nothing on failure, the
    report carries the first failing pair."""
    alg = GroupAlgebra(lie.P, lie.field)
    field = lie.field
    uea = uea or EnvelopingAlgebra(lie)
    layers = LayerContext(alg, filt)
    images = {(): alg.one().vec}

    def image_vec(mono):
        if mono not in images:
            head = mono[:-1]
            images[mono] = alg.mul_vec(image_vec(head), lie.reps[mono[-1]])
        return images[mono]

    monos = uea.monomials()
    report = {
        "ok": True,
        "layer_dims": [],
        "total_dim": len(monos),
        "failure": None,
    }
    by_deg = {}
    for m in monos:
        by_deg.setdefault(uea.degree(m), []).append(m)
    for deg in sorted(by_deg):
        batch = by_deg[deg]
        if deg >= filt.length:
            report["ok"] = False
            report["failure"] = ("degree beyond radical length", deg)
            return report
        coords = []
        for m in batch:
            cc = layers.coords(image_vec(m), deg)
            if cc is None:
                report["ok"] = False
                report["failure"] = ("image not in expected layer", m)
                return report
            coords.append(cc)
        sub = Subspace.from_vectors(field, coords, layers.complement(deg).dim)
        layer_dim = filt.layer_dims[deg]
        report["layer_dims"].append(layer_dim)
        if sub.dim != len(batch) or len(batch) != layer_dim:
            report["ok"] = False
            report["failure"] = ("layer not bijective", deg)
            return report
    for u in monos:
        for v in monos:
            du, dv = uea.degree(u), uea.degree(v)
            prod = uea.mult(u, v)
            lhs = np.zeros(alg.n, dtype=np.uint16)
            for mono, code in prod.items():
                lhs = field.ADD[lhs, field.MUL[code, image_vec(mono)]]
            rhs = alg.mul_vec(image_vec(u), image_vec(v))
            diff = field.ADD[rhs, field.NEG[lhs]]
            if diff.any() and not filt.power(du + dv + 1).contains(diff):
                report["ok"] = False
                report["failure"] = ("not multiplicative", u, v)
                return report
    return report
