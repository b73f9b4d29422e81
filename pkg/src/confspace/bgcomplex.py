"""Graph-indexed bicomplexes over a graded algebra or CDGA carrier.

For a graph family F on vertices {1..n}, the chain group is the direct sum
over G in F of A tensored once per connected component, tagged by the edge
monomial e_G.  Basis keys are pairs ``(graph, factors)`` with ``factors`` a
tuple of carrier basis indices, one per component of the graph (components
ordered by smallest vertex).  Blocks are keyed (p, q) with p the edge count
and q the total internal degree; d' adds an edge (p+1, q), d'' applies the
carrier differential (p, q+1).

Three variants:

* ``build_AG``  - the full family, the no-duplicate-target quotient, or the
  duplicate-target subcomplex (the acyclic edge-relation ideal).
* ``build_C``   - the reduced bicomplex over graphs with vertex 1 isolated
  and no duplicate targets; the first tensor factor is unrestricted, all
  later factors have positive degree.
* ``phi_bar``   - the quasi-isomorphism embedding the reduced bicomplex into
  the no-duplicate-target quotient.
"""

from .exactlinalg import Matrix, vec_add
from .algebra import sign, el_add
from . import graphs as gr


AG_FULL = "ag-full"
AG_BAR = "ag-bar"        # quotient by the duplicate-target ideal
AG_J = "ag-j"            # the duplicate-target subcomplex
C_KIND = "c"

_FAMILY_OF = {AG_FULL: gr.FULL, AG_BAR: gr.NODUPTARGET,
              AG_J: gr.JFAMILY, C_KIND: gr.HFAMILY}


class Bicomplex:
    """Blocks, basis keys and the two differentials of one bicomplex."""

    def __init__(self, carrier, n, kind, qmax=None):
        self.carrier = carrier
        self.field = carrier.field
        self.n = n
        self.kind = kind
        self.qmax = qmax
        self.blocks = {}   # (p, q) -> list of keys
        self.pos = {}      # (p, q) -> {key: index}
        self.block_of = {}  # key -> (p, q)
        self._build_basis()
        self._dp_mat = {}
        self._ds_mat = {}

    # -- basis --------------------------------------------------------------
    def _factor_choices(self, g):
        comps = gr.components(g)
        pos = self.carrier.positive_indices()
        if self.kind == C_KIND:
            return [list(range(self.carrier.dim))] + [pos] * (len(comps) - 1)
        return [list(range(self.carrier.dim))] * len(comps)

    def _build_basis(self):
        family = _FAMILY_OF[self.kind]
        degs = self.carrier.degrees
        for g in gr.enumerate_graphs(self.n, family):
            p = g.edge_count
            choices = self._factor_choices(g)
            stack = [((), 0)]
            for opts in choices:
                nxt = []
                for tup, q in stack:
                    for i in opts:
                        q2 = q + degs[i]
                        if self.qmax is not None and q2 > self.qmax:
                            continue
                        nxt.append((tup + (i,), q2))
                stack = nxt
            for tup, q in stack:
                key = (g, tup)
                blk = self.blocks.setdefault((p, q), [])
                self.pos.setdefault((p, q), {})[key] = len(blk)
                blk.append(key)
                self.block_of[key] = (p, q)

    def block_dim(self, p, q):
        return len(self.blocks.get((p, q), ()))

    def in_window(self, q):
        return self.qmax is None or q <= self.qmax

    # -- differentials on single keys ---------------------------------------
    def _pair_term(self, key, i, j):
        """Multiplication by the edge generator e_{ij}: element dict over keys.

        This is the single-edge summand of d'; for the reduced bicomplex it
        applies the three-term rewriting that keeps later factors positive."""
        g, factors = key
        res = gr.add_edge(g, i, j)
        if res is gr.ZERO:
            return {}
        g2, esign = res
        degs = self.carrier.degrees
        f = self.field
        if self.kind == C_KIND:
            return self._pair_term_reduced(g, factors, i, j, g2, esign)
        family = _FAMILY_OF[self.kind]
        if self.kind == AG_BAR and not gr.in_family(g2, family):
            return {}
        s = gr.component_of(g, i)
        t = gr.component_of(g, j)
        if s == t:
            return {(g2, factors): f.of(esign)}
        if s > t:
            s, t = t, s
        tau = sum(degs[factors[r]] for r in range(s + 1, t)) * degs[factors[t]]
        coeff = f.of(esign * sign(tau))
        prod = self.carrier.mul_basis(factors[s], factors[t])
        out = {}
        for k, c in prod.items():
            tup = factors[:s] + (k,) + factors[s + 1:t] + factors[t + 1:]
            out = el_add(out, {(g2, tup): coeff * c})
        return out

    def _pair_term_reduced(self, g, factors, i, j, g2, esign):
        degs = self.carrier.degrees
        f = self.field
        if i == 1 or not gr.in_family(g2, gr.HFAMILY):
            return {}
        s = gr.component_of(g, i)
        t = gr.component_of(g, j)
        # the target j must head its component, which forces s < t
        assert s < t
        ds = degs[factors[s]]
        dt = degs[factors[t]]
        d2s = sum(degs[factors[r]] for r in range(1, s))
        dst = sum(degs[factors[r]] for r in range(s + 1, t))
        base = f.of(esign)
        out = {}

        def emit(tup, c):
            nonlocal out
            out = el_add(out, {(g2, tup): c})

        # merge the two factors in place
        for k, c in self.carrier.mul_basis(factors[s], factors[t]).items():
            tup = factors[:s] + (k,) + factors[s + 1:t] + factors[t + 1:]
            emit(tup, base * f.of(sign(dt * dst)) * c)
        # absorb the source factor into the free slot, move the target factor up
        eps = sign(ds * d2s + dt * dst)
        for k, c in self.carrier.mul_basis(factors[0], factors[s]).items():
            tup = ((k,) + factors[1:s] + (factors[t],)
                   + factors[s + 1:t] + factors[t + 1:])
            emit(tup, -base * f.of(eps) * c)
        # absorb the target factor into the free slot
        for k, c in self.carrier.mul_basis(factors[0], factors[t]).items():
            tup = ((k,) + factors[1:t] + factors[t + 1:])
            emit(tup, -base * f.of(sign(dt * (d2s + ds + dst))) * c)
        return out

    def dprime_key(self, key):
        g = key[0]
        out = {}
        lo = 2 if self.kind == C_KIND else 1
        for i in range(lo, self.n):
            for j in range(i + 1, self.n + 1):
                out = el_add(out, self._pair_term(key, i, j))
        return out

    def dsecond_key(self, key):
        g, factors = key
        degs = self.carrier.degrees
        f = self.field
        out = {}
        gsign = f.of(sign(g.edge_count))
        pre = 0
        for slot, fi in enumerate(factors):
            s = gsign * f.of(sign(pre))
            for k, c in self.carrier.d_basis(fi).items():
                tup = factors[:slot] + (k,) + factors[slot + 1:]
                out = el_add(out, {(g, tup): s * c})
            pre += degs[fi]
        return out

    def apply_dprime(self, el):
        out = {}
        for key, c in el.items():
            out = vec_add(out, self.dprime_key(key), c)
        return out

    def apply_dsecond(self, el):
        out = {}
        for key, c in el.items():
            out = vec_add(out, self.dsecond_key(key), c)
        return out

    def apply_total(self, el):
        return vec_add(self.apply_dprime(el), self.apply_dsecond(el))

    # -- block matrices -----------------------------------------------------
    def _as_block(self, el, p, q):
        pos = self.pos.get((p, q), {})
        out = {}
        for key, c in el.items():
            if key not in pos:
                raise KeyError("element leaves block (%d, %d): %r" % (p, q, key))
            out[pos[key]] = c
        return out

    def from_block(self, vec, p, q):
        keys = self.blocks.get((p, q), [])
        return {keys[i]: c for i, c in vec.items()}

    def dprime_matrix(self, p, q):
        if (p, q) not in self._dp_mat:
            cols = [self._as_block(self.dprime_key(k), p + 1, q)
                    for k in self.blocks.get((p, q), [])]
            self._dp_mat[(p, q)] = Matrix.from_columns(
                self.field, cols, self.block_dim(p + 1, q))
        return self._dp_mat[(p, q)]

    def dsecond_matrix(self, p, q):
        if (p, q) not in self._ds_mat:
            cols = [self._as_block(self.dsecond_key(k), p, q + 1)
                    for k in self.blocks.get((p, q), [])]
            self._ds_mat[(p, q)] = Matrix.from_columns(
                self.field, cols, self.block_dim(p, q + 1))
        return self._ds_mat[(p, q)]

    @property
    def pmax(self):
        return max((p for (p, _) in self.blocks), default=0)

    def qrange(self):
        qs = [q for (_, q) in self.blocks]
        return (min(qs), max(qs)) if qs else (0, 0)

    def total_dim(self):
        return sum(len(b) for b in self.blocks.values())

    def show_key(self, key):
        g, factors = key
        labs = "(" + ", ".join(self.carrier.labels[i] for i in factors) + ")"
        es = "".join("e%d%d" % e for e in g.edges)
        return labs + (es or "")


def build_AG(carrier, n, family=gr.FULL, qmax=None):
    """Graph-family bicomplex: full family, quotient, or ideal subcomplex."""
    kind = {gr.FULL: AG_FULL, gr.NODUPTARGET: AG_BAR, gr.JFAMILY: AG_J}[family]
    return Bicomplex(carrier, n, kind, qmax)


def build_C(carrier, n, qmax=None):
    """Reduced bicomplex with vertex 1 isolated and positive later factors."""
    return Bicomplex(carrier, n, C_KIND, qmax)


def edge_multiply(bc, el, i, j):
    """Right multiplication by the edge generator e_{ij} in a graph-family
    bicomplex (not defined for the reduced kind)."""
    if bc.kind == C_KIND:
        raise ValueError("edge multiplication lives on the graph-family side")
    out = {}
    for key, c in el.items():
        out = vec_add(out, bc._pair_term(key, i, j), c)
    return out


def phi_bar(c_bc, bar_bc):
    """Embedding of the reduced bicomplex into the no-duplicate-target
    quotient.  Returns a function mapping elements (dicts over reduced keys)
    to elements over quotient keys."""
    carrier = c_bc.carrier
    f = carrier.field
    degs = carrier.degrees

    def on_key(key):
        g, factors = key
        l = len(factors)
        out = {}
        unit = carrier.unit
        for mask in range(1 << (l - 1)):
            subset = [r + 1 for r in range(l - 1) if mask >> r & 1]
            k = len(subset)
            # Koszul sign of pulling the chosen factors left past the
            # skipped ones
            e = 0
            inset = set(subset)
            for idx_i in subset:
                for idx_j in range(1, idx_i):
                    if idx_j not in inset:
                        e += degs[factors[idx_i]] * degs[factors[idx_j]]
            head = {factors[0]: f.one}
            for idx in subset:
                head = carrier.multiply(head, {factors[idx]: f.one})
            coeff = f.of(sign(k + e))
            for h, c in head.items():
                tup = (h,) + tuple(unit if r in inset else factors[r]
                                   for r in range(1, l))
                out = el_add(out, {(g, tup): coeff * c})
        return out

    def apply(el):
        out = {}
        for key, c in el.items():
            out = vec_add(out, on_key(key), c)
        return out

    return apply


def check_square_zero(bc):
    """Assert d'd' = 0, d''d'' = 0 and d'd'' + d''d' = 0 on every basis key
    whose images stay inside the q-window.  Returns the number of keys
    checked."""
    cnt = 0
    for (p, q), keys in sorted(bc.blocks.items()):
        for key in keys:
            el = {key: bc.field.one}
            dp = bc.apply_dprime(el)
            if bc.apply_dprime(dp):
                raise AssertionError("d'd' != 0 at %r" % (key,))
            if bc.in_window(q + 2):
                ds = bc.apply_dsecond(el)
                if bc.apply_dsecond(ds):
                    raise AssertionError("d''d'' != 0 at %r" % (key,))
            if bc.in_window(q + 1):
                ds = bc.apply_dsecond(el)
                mix = vec_add(bc.apply_dsecond(dp), bc.apply_dprime(ds))
                if mix:
                    raise AssertionError("d'd'' + d''d' != 0 at %r" % (key,))
            cnt += 1
    return cnt
