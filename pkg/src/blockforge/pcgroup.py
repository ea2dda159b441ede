"""Finite groups via power-commutator presentations.

A presentation lists generators g_1..g_m with relative orders r_i, power
relations g_i^{r_i} = (word) and commutator relations [g_j, g_i] = (word)
for j > i, with the convention [a, b] = a b a^-1 b^-1.  Elements are
exponent vectors in lexicographic order (first generator most significant);
normal forms come from collection-from-the-left.  Consistency is certified
by Light's associativity test on the full multiplication table, so an
inconsistent presentation is rejected rather than silently mangled.

Semidirect products P x| H are assembled pairwise from the factor tables
and the action, with P-generators first in the combined presentation.
"""

from functools import lru_cache

import numpy as np

DEFAULT_ORDER_BOUND = 10**6
TABLE_BOUND = 5000


class GroupError(ValueError):
    pass


def _word_key(word):
    return tuple((int(i), int(e)) for i, e in word)


class PcPresentation:
    """Immutable presentation record; words are ((gen_index, exponent), ...)."""

    def __init__(self, gens, orders, powers=None, commutators=None):
        self.gens = tuple(gens)
        self.orders = tuple(int(r) for r in orders)
        if len(self.gens) != len(self.orders):
            raise GroupError("generator/order length mismatch")
        if len(set(self.gens)) != len(self.gens):
            raise GroupError("duplicate generator names")
        if any(r < 1 for r in self.orders):
            raise GroupError("relative orders must be positive")
        self.powers = {int(i): _word_key(w) for i, w in (powers or {}).items() if w}
        self.commutators = {}
        for (j, i), w in (commutators or {}).items():
            if not j > i:
                raise GroupError("commutator keys must satisfy j > i")
            if w:
                self.commutators[(int(j), int(i))] = _word_key(w)

    @property
    def n_gens(self):
        return len(self.gens)

    def gen_index(self, name):
        try:
            return self.gens.index(name)
        except ValueError:
            raise GroupError(f"unknown generator name {name!r}") from None

    def word(self, named_pairs):
        """Convert [(name, exp), ...] to an index-based word."""
        return tuple((self.gen_index(n), int(e)) for n, e in named_pairs)

    @classmethod
    def trivial(cls):
        return cls((), ())

    def __repr__(self):
        return f"PcPresentation(gens={self.gens}, orders={self.orders})"


class PcGroup:
    """A finite pc-group with explicit normal forms and multiplication table."""

    def __init__(self, presentation, table=None, max_order=DEFAULT_ORDER_BOUND):
        self.pres = presentation
        self.order = 1
        for r in presentation.orders:
            self.order *= r
        if self.order > max_order:
            raise GroupError(
                f"group order {self.order} exceeds the size bound {max_order}"
            )
        if self.order > TABLE_BOUND:
            raise GroupError(
                f"group order {self.order} exceeds the table bound {TABLE_BOUND}"
            )
        m = presentation.n_gens
        self._weights = [1] * m
        for i in range(m - 2, -1, -1):
            self._weights[i] = self._weights[i + 1] * presentation.orders[i + 1]
        if table is not None:
            self.table = np.ascontiguousarray(table, dtype=np.int32)
        else:
            self.table = self._build_table()
        self.inv = self._build_inverses()
        self._certify()

    # -- exponent vectors ----------------------------------------------------

    def exponents(self, idx):
        out = []
        for i in range(self.pres.n_gens):
            out.append(idx // self._weights[i])
            idx %= self._weights[i]
        return tuple(out)

    def from_exponents(self, exps):
        idx = 0
        for i, (a, r) in enumerate(zip(exps, self.pres.orders)):
            idx += (a % r) * self._weights[i]
        return idx

    # -- word evaluation -------------------------------------------------------

    def collect(self, named_word):
        """Normal form (element index) of a word given as [(name, exp), ...]."""
        idx = 0
        for name, e in named_word:
            idx = self.mul(idx, self.power(self.gen_element(name), int(e)))
        return idx

    def _unit(self, i):
        exps = [0] * self.pres.n_gens
        exps[i] = 1
        return exps

    # -- table construction ----------------------------------------------------

    def _build_table(self):
        """Multiplication table, built inductively along the tail subgroups.

        For the chain G_k = <g_k, ..., g_m> the table of G_k is assembled
        from the table of G_{k+1}, the conjugation automorphism
        u |-> g_k u g_k^-1 of G_{k+1} (read off the commutator relations),
        and the power relation g_k^{r_k}.  Elements of G_k are written
        g_k^a * u with u in G_{k+1}, indexed a*|G_{k+1}| + u.
        """
        m = self.pres.n_gens
        orders = self.pres.orders
        sizes = [1] * (m + 1)
        for k in range(m - 1, -1, -1):
            sizes[k] = orders[k] * sizes[k + 1]

        table = np.zeros((1, 1), dtype=np.int32)
        inv = np.zeros(1, dtype=np.int32)

        def local_gen(i):
            # index of g_i inside the current tail subgroup
            return sizes[i + 1]

        def ev(word, k, table, inv):
            """Evaluate a word in generators later than k inside G_{k+1}."""
            x = 0
            for i, e in word:
                if i <= k:
                    raise GroupError(
                        f"relation word uses generator {self.pres.gens[i]!r} "
                        f"which is not later than {self.pres.gens[k]!r}"
                    )
                g = local_gen(i)
                step = g if e > 0 else int(inv[g])
                for _ in range(abs(e)):
                    x = int(table[x, step])
            return x

        for k in range(m - 1, -1, -1):
            nt = sizes[k + 1]
            r = orders[k]
            n = r * nt
            pw = ev(self.pres.powers.get(k, ()), k, table, inv)
            # conjugation by g_k on G_{k+1}: from g_j g_k = [g_j,g_k] g_k g_j
            # we get g_k g_j g_k^-1 = [g_j,g_k]^-1 g_j
            gen_imgs = {}
            for j in range(k + 1, m):
                w = ev(self.pres.commutators.get((j, k), ()), k, table, inv)
                gen_imgs[j] = int(table[inv[w], local_gen(j)])
            phi = np.empty(nt, dtype=np.int32)
            phi[0] = 0
            for u in range(1, nt):
                j = k + 1
                while (u // sizes[j + 1]) % orders[j] == 0:
                    j += 1
                prev = u - sizes[j + 1]
                phi[u] = table[gen_imgs[j], phi[prev]]
            if len(np.unique(phi)) != nt:
                raise GroupError("inconsistent presentation: conjugation not bijective")
            if not np.array_equal(phi[table], table[phi[:, None], phi[None, :]]):
                raise GroupError(
                    "inconsistent presentation: conjugation is not an automorphism"
                )
            phi_inv = np.empty(nt, dtype=np.int32)
            phi_inv[phi] = np.arange(nt)
            new = np.empty((n, n), dtype=np.int32)
            ar = np.arange(nt)
            conj_pow = np.empty((r, nt), dtype=np.int32)
            conj_pow[0] = ar
            for b in range(1, r):
                conj_pow[b] = phi_inv[conj_pow[b - 1]]
            for a in range(r):
                for b in range(r):
                    block = table[conj_pow[b][:, None], ar[None, :]]
                    c = a + b
                    if c >= r:
                        c -= r
                        block = table[pw, block]
                    new[a * nt : (a + 1) * nt, b * nt : (b + 1) * nt] = c * nt + block
            table = new
            inv = np.empty(n, dtype=np.int32)
            where = np.argwhere(table == 0)
            inv[where[:, 0]] = where[:, 1]
        return table

    def _build_inverses(self):
        inv = np.empty(self.order, dtype=np.int32)
        where = np.argwhere(self.table == 0)
        inv[where[:, 0]] = where[:, 1]
        return inv

    def _certify(self):
        t = self.table
        n = self.order
        if t.shape != (n, n):
            raise GroupError("table shape mismatch")
        if not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
            raise GroupError("identity fails in the multiplication table")
        # Light's associativity test over a generating set
        for g in range(self.pres.n_gens):
            gidx = self.from_exponents(self._unit(g))
            lhs = t[:, t[gidx]]
            rhs = t[t[:, gidx]]
            if not np.array_equal(lhs, rhs):
                raise GroupError("associativity fails: inconsistent presentation")
        if np.any(np.sort(self.table[np.arange(n), self.inv]) != 0):
            raise GroupError("inverses fail")

    # -- group operations ------------------------------------------------------

    def mul(self, a, b):
        return int(self.table[a, b])

    def inverse(self, a):
        return int(self.inv[a])

    def conj(self, h, x):
        """h x h^-1."""
        return int(self.table[self.table[h, x], self.inv[h]])

    def commutator(self, a, b):
        """[a, b] = a b a^-1 b^-1."""
        return int(self.table[self.table[self.table[a, b], self.inv[a]], self.inv[b]])

    def power(self, a, k):
        if k < 0:
            return self.power(self.inverse(a), -k)
        out, cur = 0, a
        while k:
            if k & 1:
                out = self.mul(out, cur)
            cur = self.mul(cur, cur)
            k >>= 1
        return out

    def element_order(self, a):
        k, cur = 1, a
        while cur != 0:
            cur = self.mul(cur, a)
            k += 1
        return k

    def elements(self):
        return range(self.order)

    def gen_element(self, name):
        return self.from_exponents(self._unit(self.pres.gen_index(name)))

    def gen_elements(self):
        return [self.from_exponents(self._unit(i)) for i in range(self.pres.n_gens)]

    def subgroup_closure(self, seed):
        seen = {0}
        frontier = [0]
        seed = [int(s) for s in seed]
        while frontier:
            nxt = []
            for x in frontier:
                for s in seed:
                    for y in (self.mul(x, s), self.mul(x, self.inverse(s))):
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def center(self):
        gens = self.gen_elements()
        out = []
        for z in range(self.order):
            if all(self.mul(z, g) == self.mul(g, z) for g in gens):
                out.append(z)
        return out

    def derived_subgroup(self):
        t, inv = self.table, self.inv
        ab = t
        step = t[ab, inv[:, None]]
        comm = t[step, inv[None, :]]
        return self.subgroup_closure(np.unique(comm).tolist())

    def center_and_derived(self):
        return self.center(), self.derived_subgroup()

    def is_abelian(self):
        return np.array_equal(self.table, self.table.T)

    def element_str(self, idx):
        if idx == 0:
            return "1"
        parts = []
        for name, a in zip(self.pres.gens, self.exponents(idx)):
            if a == 1:
                parts.append(name)
            elif a > 1:
                parts.append(f"{name}^{a}")
        return "*".join(parts)

    def __repr__(self):
        return f"PcGroup(order={self.order}, gens={self.pres.gens})"


class GroupAction:
    """An action of H on P given by images of P-generators under each H-generator."""

    def __init__(self, hgroup, pgroup, gen_images):
        self.H = hgroup
        self.P = pgroup
        perms = []
        for hname in hgroup.pres.gens:
            try:
                images = gen_images[hname]
            except KeyError:
                raise GroupError(f"missing action for H-generator {hname!r}") from None
            img = [pgroup.collect(images[pname]) for pname in pgroup.pres.gens]
            perm = self._extend_endomorphism(img)
            self._verify_automorphism(perm, hname)
            perms.append(perm)
        self.gen_perms = perms
        self.alpha = self._extend_to_h()
        self._verify_compatible()

    def _extend_endomorphism(self, gen_images):
        P = self.P
        out = np.empty(P.order, dtype=np.int32)
        out[0] = 0
        for idx in range(1, P.order):
            exps = P.exponents(idx)
            i = next(k for k, a in enumerate(exps) if a)
            prev = idx - P._weights[i]
            out[idx] = P.table[gen_images[i], out[prev]]
        return out

    def _verify_automorphism(self, perm, hname):
        P = self.P
        if len(np.unique(perm)) != P.order:
            raise GroupError(f"action of {hname!r} is not a bijection of P")
        lhs = perm[P.table]
        rhs = P.table[perm[:, None], perm[None, :]]
        if not np.array_equal(lhs, rhs):
            raise GroupError(f"action of {hname!r} does not preserve the relations of P")

    def _extend_to_h(self):
        H, P = self.H, self.P
        alpha = np.empty((H.order, P.order), dtype=np.int32)
        alpha[0] = np.arange(P.order)
        for idx in range(1, H.order):
            exps = H.exponents(idx)
            i = next(k for k, a in enumerate(exps) if a)
            prev = idx - H._weights[i]
            alpha[idx] = self.gen_perms[i][alpha[prev]]
        return alpha

    def _verify_compatible(self):
        H, A = self.H, self.alpha
        for h1 in range(H.order):
            lhs = A[H.table[h1]]
            rhs = A[h1][A]
            if not np.array_equal(lhs, rhs):
                raise GroupError(
                    "generator images do not define a homomorphism H -> Aut(P)"
                )

    def acts_trivially(self, h_elements):
        n = self.P.order
        return all(np.array_equal(self.alpha[h], np.arange(n)) for h in h_elements)

    def apply(self, h, p):
        return int(self.alpha[h, p])


class SemidirectGroup:
    """G = P x| H with the pair (p, h) indexed as p*|H| + h."""

    def __init__(self, pgroup, hgroup, action):
        if set(pgroup.pres.gens) & set(hgroup.pres.gens):
            raise GroupError("P and H generator names must be disjoint")
        self.P = pgroup
        self.H = hgroup
        self.action = action
        self.group = PcGroup(self._combined_presentation(), table=self._build_table())

    def _build_table(self):
        P, H, A = self.P, self.H, self.action.alpha
        NP, NH = P.order, H.order
        n = NP * NH
        g = np.arange(n)
        p1, h1 = g // NH, g % NH
        ap2 = A[h1[:, None], (g // NH)[None, :]]
        table = P.table[p1[:, None], ap2] * NH + H.table[h1[:, None], (g % NH)[None, :]]
        return table.astype(np.int32)

    def _combined_presentation(self):
        P, H = self.P, self.H
        nP = P.pres.n_gens
        gens = P.pres.gens + H.pres.gens
        orders = P.pres.orders + H.pres.orders

        def shift(word, by):
            return tuple((i + by, e) for i, e in word)

        powers = dict(P.pres.powers)
        for j, w in H.pres.powers.items():
            powers[nP + j] = shift(w, nP)
        comms = dict(P.pres.commutators)
        for (j, i), w in H.pres.commutators.items():
            comms[(nP + j, nP + i)] = shift(w, nP)
        for j, perm in enumerate(self.action.gen_perms):
            for i in range(nP):
                gi = P.from_exponents(P._unit(i))
                c = P.mul(int(perm[gi]), P.inverse(gi))
                if c:
                    comms[(nP + j, i)] = tuple(
                        (k, a) for k, a in enumerate(P.exponents(c)) if a
                    )
        return PcPresentation(gens, orders, powers, comms)

    @property
    def order(self):
        return self.group.order

    def embed_p(self, p):
        return int(p) * self.H.order

    def embed_h(self, h):
        return int(h)

    def p_part(self, g):
        return int(g) // self.H.order

    def h_part(self, g):
        return int(g) % self.H.order

    def __repr__(self):
        return f"SemidirectGroup(order={self.order})"


def semidirect_product(pgroup, hgroup, action):
    return SemidirectGroup(pgroup, hgroup, action)
