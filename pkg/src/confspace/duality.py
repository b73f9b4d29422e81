"""Perfect pairing between the tensor-power complex and the graph quotient.

For a Poincare duality algebra H with top degree m, the block (p, h) of the
tensor-power complex pairs with the block (p, (n - p) m - h) of the
no-duplicate-target graph quotient:

    < T (x) mu ; (b_1, ..., b_l) e_G > = 0 unless mu and G have the same
    edge set; otherwise merge the n tensor slots of T along the components
    of G (with the Koszul sign of the reordering), then pair factor by
    factor against b_1, ..., b_l with the interleaving sign.

The pairing kills every block relation, is perfect on the quotients, and
intertwines the two differentials up to a sign that is constant on each
block; ``theorem1_check`` verifies all of this and reports the discovered
signs and the resulting second-page duality of dimensions."""

from .exactlinalg import Matrix, SpanReducer, rank
from .algebra import sign
from . import graphs as gr


class DualityError(AssertionError):
    pass


class Pairing:
    def __init__(self, ct, bar):
        """ct: tensor-power complex; bar: no-duplicate-target bicomplex on
        the same algebra and n, with zero internal differential."""
        if ct.alg is not bar.carrier:
            raise ValueError("the two complexes must share the algebra")
        if bar.kind != "ag-bar":
            raise ValueError("pairing is against the no-duplicate-target quotient")
        self.ct = ct
        self.bar = bar
        self.alg = ct.alg
        self.m = ct.m
        self.n = ct.n

    def dual_block(self, p, h):
        return (p, (self.n - p) * self.m - h)

    def pair_keys(self, ct_key, bar_key):
        """Scalar pairing of one ambient tensor-power key with one graph key."""
        tens, mu = ct_key
        g, factors = bar_key
        if tuple(sorted(mu)) != g.edges:
            return self.alg.field.zero
        comps = gr.components(g)
        degs = self.alg.degrees
        f = self.alg.field
        # merge the tensor slots along components: Koszul sign of reordering
        # slot order 1..n into component-grouped order
        order = [v for comp in comps for v in comp]
        e = 0
        for a in range(self.n):
            for b in range(a + 1, self.n):
                if order[a] > order[b]:
                    e += degs[tens[order[a] - 1]] * degs[tens[order[b] - 1]]
        merged = []
        # suspension sign of the edge monomial: trivial for even m, needed
        # for the adjointness sign to be constant on blocks when m is odd
        e += self.m * sum(t for (_, t) in mu)
        total = f.of(sign(e))
        for comp in comps:
            el = {self.alg.unit: f.one}
            for v in comp:
                el = self.alg.multiply(el, {tens[v - 1]: f.one})
            merged.append(el)
        # factor-by-factor pairing with the interleaving sign
        l = len(comps)
        out = f.zero
        for combo, c0 in _expand(merged, f):
            e2 = 0
            for i in range(l):
                for j in range(i + 1, l):
                    e2 += degs[factors[i]] * degs[combo[j]]
            s = f.of(sign(e2))
            val = f.one
            for ci, bi in zip(combo, factors):
                prod = self.alg.mul_basis(ci, bi)
                v = prod.get(self.alg.top, f.zero)
                if not v:
                    val = f.zero
                    break
                val = val * v
            if val:
                out = out + c0 * s * val
        return total * out

    def matrix(self, p, h):
        """Pairing matrix in the R-presentation: rows = block quotient basis,
        columns = basis of the dual graph block."""
        ct = self.ct
        reps, _ = ct.r_quotient(p, h)
        rk = ct.r_keys(p, h)
        keys_src = ct._blocks.get((p, h), [])
        q2 = self.dual_block(p, h)
        bar_keys = self.bar.blocks.get(q2, [])
        rows = []
        for v in reps:
            row = {}
            for j, bkey in enumerate(bar_keys):
                s = self.alg.field.zero
                for ri, c in v.items():
                    s = s + c * self.pair_keys(keys_src[rk[ri]], bkey)
                if s:
                    row[j] = s
            rows.append(row)
        return Matrix(self.alg.field, len(rows), len(bar_keys), rows)

    def relations_orthogonal(self, p, h):
        """Every straightened relation must pair to zero with the dual block."""
        ct = self.ct
        rk = ct.r_keys(p, h)
        keys_src = ct._blocks.get((p, h), [])
        q2 = self.dual_block(p, h)
        bar_keys = self.bar.blocks.get(q2, [])
        for v in ct.r_relations(p, h):
            for bkey in bar_keys:
                s = self.alg.field.zero
                for ri, c in v.items():
                    s = s + c * self.pair_keys(keys_src[rk[ri]], bkey)
                if s:
                    raise DualityError(
                        "relation pairs nontrivially at (%d, %d)" % (p, h))
        return True


def _expand(factor_elements, f):
    """All index combinations of a list of sparse elements, with coefficients."""
    combos = [((), f.one)]
    for el in factor_elements:
        nxt = []
        for tup, c in combos:
            for i, ci in sorted(el.items()):
                nxt.append((tup + (i,), c * ci))
        combos = nxt
    return combos


def theorem1_check(alg, n, ct=None, bar=None):
    """Full duality verification for one algebra and point count.

    Checks, per block: relations pair to zero, the induced pairing on the
    quotient is perfect, and the two differentials are adjoint up to a sign
    constant on the block.  Returns a dict with the discovered signs and the
    matching second-page dimensions on both sides."""
    from .ctcomplex import CTComplex
    from .bgcomplex import build_AG

    ct = ct or CTComplex(alg, n)
    bar = bar or build_AG(alg, n, gr.NODUPTARGET)
    pr = Pairing(ct, bar)
    f = alg.field
    signs = {}
    for (p, h) in ct.blocks():
        q2 = pr.dual_block(p, h)
        dim_t = ct.dim(p, h)
        dim_b = bar.block_dim(*q2)
        if dim_t != dim_b:
            raise DualityError("block dims differ at (%d, %d): %d vs %d"
                               % (p, h, dim_t, dim_b))
        if dim_t == 0:
            continue
        pr.relations_orthogonal(p, h)
        pm = pr.matrix(p, h)
        if rank(pm) != dim_t:
            raise DualityError("pairing degenerate at (%d, %d)" % (p, h))
        signs[(p, h)] = None
    # adjointness: < d1 z ; w > = sigma < z ; d' w > with sigma constant per
    # source block of d1
    for (p, h) in ct.blocks():
        if p == 0 or ct.dim(p, h) == 0:
            continue
        tgt = (p - 1, h + ct.m)
        if ct.dim(*tgt) == 0:
            continue
        lhs = _compose_pair_d1(pr, p, h)
        rhs = _compose_dprime_pair(pr, p, h)
        sigma = None
        for i, row in enumerate(lhs.rows):
            for j, x in row.items():
                y = rhs.entry(i, j)
                if not y:
                    raise DualityError("adjointness support mismatch at (%d, %d)"
                                       % (p, h))
                r = x / y
                if sigma is None:
                    sigma = r
                elif sigma != r:
                    raise DualityError("adjointness sign not constant at (%d, %d)"
                                       % (p, h))
        for i, row in enumerate(rhs.rows):
            for j in row:
                if not lhs.entry(i, j):
                    raise DualityError("adjointness support mismatch at (%d, %d)"
                                       % (p, h))
        if sigma is not None and sigma * sigma != f.one:
            raise DualityError("adjointness ratio %r is not a sign" % (sigma,))
        signs[(p, h)] = sigma
    # second-page dimension duality
    from .spectral import SpectralSequence
    e2_ct = ct.e2_dims()
    ss = SpectralSequence(bar)
    e2_bar = {}
    dual_pairs = []
    for (p, h), d in e2_ct.items():
        q2 = pr.dual_block(p, h)
        db = ss.e_dim(2, *q2)
        if d or db:
            dual_pairs.append(((p, h), q2, d, db))
        if d != db:
            raise DualityError("second-page dims differ: T%r=%d, quotient%r=%d"
                               % ((p, h), d, q2, db))
    return {"signs": signs, "e2_pairs": dual_pairs}


def _compose_pair_d1(pr, p, h):
    """Matrix of (z, w) -> < d1 z ; w >: rows = source quotient basis,
    cols = graph block dual to the d1 target."""
    ct = pr.ct
    d1 = ct.r_d1_matrix(p, h)
    ptgt = pr.matrix(p - 1, h + ct.m)
    rows = []
    for j in range(d1.ncols):
        col = d1.column(j)
        row = {}
        for i, c in col.items():
            for k, x in ptgt.rows[i].items():
                row[k] = row.get(k, pr.alg.field.zero) + c * x
        rows.append({k: v for k, v in row.items() if v})
    return Matrix(pr.alg.field, d1.ncols, ptgt.ncols, rows)


def _compose_dprime_pair(pr, p, h):
    """Matrix of (z, w) -> < z ; d' w > over the same index sets."""
    ct = pr.ct
    bar = pr.bar
    psrc = pr.matrix(p, h)
    q_from = pr.dual_block(p - 1, h + ct.m)
    dmat = bar.dprime_matrix(*q_from)
    rows = []
    for i in range(psrc.nrows):
        row = {}
        for j in range(dmat.ncols):
            col = dmat.column(j)
            s = pr.alg.field.zero
            for t, c in col.items():
                s = s + psrc.entry(i, t) * c
            if s:
                row[j] = s
        rows.append(row)
    return Matrix(pr.alg.field, psrc.nrows, dmat.ncols, rows)
