"""Massey products and second-page obstruction detectors.

Inputs are classes of a cohomology algebra that keeps cocycle
representatives of its ambient CDGA (see ``algebra.cohomology``).  Triple
and matrix Massey products are computed from explicit defining systems;
their residuals in the indecomposable quotient Q = H+/(H+ . H+) are
well defined even though the classes themselves carry indeterminacy.

The second-page differential on the four-point reduced bicomplex is
available two ways: a closed formula evaluated from triple Massey products
of the entries, and the zig-zag computation on the bicomplex itself (solve
away the vertical leak of the horizontal differential and read off the
resulting corner class).  The zig-zag value is the authoritative one; the
formula is compared against it modulo the page boundaries."""

from .exactlinalg import SpanReducer, solve, NO_SOLUTION, vec_add, vec_scale
from .algebra import sign, koszul, el_degree, indecomposables
from . import graphs as gr


class NotDefined(ValueError):
    pass


class MasseyResult:
    def __init__(self, H, rep, class_el, indeterminacy, system):
        self.H = H
        self.rep = rep                  # cocycle in the ambient carrier
        self.class_el = class_el        # element of H
        self.indeterminacy = indeterminacy  # list of H elements spanning it
        self.system = system            # the defining system used

    def residual(self):
        return q_residual(self.H, self.class_el)

    def class_modulo_indeterminacy(self):
        red = SpanReducer(self.H.field)
        for v in self.indeterminacy:
            red.insert(v)
        return red.reduce(self.class_el)

    def is_zero_modulo_indeterminacy(self):
        return not self.class_modulo_indeterminacy()


def _rep(H, u):
    """Cocycle representative of an H element."""
    out = {}
    for i, c in u.items():
        out = vec_add(out, H.representatives[i], c)
    return out


def _as_class(H, u):
    if isinstance(u, str):
        return H.element(u)
    return u


def q_residual(H, u):
    """Coordinates of a class in the indecomposable quotient."""
    reps, project = _q_data(H)
    return {i: c for i, c in enumerate(project(u)) if c}


def _q_data(H):
    if not hasattr(H, "_q_cache"):
        H._q_cache = indecomposables(H)
    return H._q_cache


def triple_massey(H, a, b, c):
    """Triple Massey product <a, b, c> from one defining system.

    a, b, c: classes of H (elements or labels) with [a][b] = [b][c] = 0.
    Returns a MasseyResult; NotDefined if a pairwise product is nonzero."""
    return matrix_massey(H, [a], [[b]], [c])


def matrix_massey(H, L, B, C):
    """Triple matrix Massey product <L, B, C>.

    L: r classes, B: r x s matrix of classes, C: s classes, with every entry
    of [L][B] and [B][C] vanishing.  The representative is
    sum_j x_j c_j - sum_i (-1)^{|a_i|} a_i y_i with d(x_j) = (L B)_j and
    d(y_i) = (B C)_i."""
    f = H.field
    L = [_as_class(H, u) for u in L]
    B = [[_as_class(H, u) for u in row] for row in B]
    C = [_as_class(H, u) for u in C]
    r, s = len(L), len(C)
    if len(B) != r or any(len(row) != s for row in B):
        raise ValueError("matrix shapes do not compose")
    view = H.view
    carrier = H.ambient
    la = [el_degree(H, u) for u in L]
    deg = la[0] + el_degree(H, B[0][0]) + el_degree(H, C[0]) - 1
    if deg > view.max_degree:
        raise NotDefined("total degree %d exceeds the computed range" % deg)
    # defining system
    xs = []
    for j in range(s):
        w = {}
        for i in range(r):
            if any(H.multiply(L[i], B[i][j]).values()):
                raise NotDefined("an entry of the first product is nonzero")
            w = vec_add(w, carrier.multiply(_rep(H, L[i]), _rep(H, B[i][j])))
        x = view.solve_d(w)
        if x is NO_SOLUTION:
            raise NotDefined("first product not exact at column %d" % j)
        xs.append(x)
    ys = []
    for i in range(r):
        w = {}
        for j in range(s):
            if any(H.multiply(B[i][j], C[j]).values()):
                raise NotDefined("an entry of the second product is nonzero")
            w = vec_add(w, carrier.multiply(_rep(H, B[i][j]), _rep(H, C[j])))
        y = view.solve_d(w)
        if y is NO_SOLUTION:
            raise NotDefined("second product not exact at row %d" % i)
        ys.append(y)
    rep = {}
    for j in range(s):
        rep = vec_add(rep, carrier.multiply(xs[j], _rep(H, C[j])))
    for i in range(r):
        rep = vec_add(rep, carrier.multiply(_rep(H, L[i]), ys[i]),
                      f.of(-sign(la[i])))
    if carrier.differentiate(rep):
        raise AssertionError("Massey representative is not a cocycle")
    cls = H.class_of(rep)
    # indeterminacy: L . H^{|y|} + H^{|x|} . C, degreewise
    ind = []
    for i in range(r):
        dy = deg - la[i]
        for k in [t for t in range(H.dim) if H.degrees[t] == dy]:
            v = H.multiply(L[i], {k: f.one})
            if v:
                ind.append(v)
    for j in range(s):
        dc = el_degree(H, C[j])
        dx = deg - dc
        for k in [t for t in range(H.dim) if H.degrees[t] == dx]:
            v = H.multiply({k: f.one}, C[j])
            if v:
                ind.append(v)
    return MasseyResult(H, rep, cls, ind, {"x": xs, "y": ys})


# ---------------------------------------------------------------------------
# residual map on the corner blocks

def obstruction_residual(H, tensor_el):
    """Image of an element of H (x) H+ under the residual projection.

    Splits off the unit in the first factor, projects both factors to the
    indecomposables Q, and antisymmetrizes the Q (x) Q part with
    psi(a (x) b) = a (x) b - (-1)^{|a||b|} b (x) a.  Returns a dict with
    keys ('kq', j) and ('qq', i, j) over Q coordinates."""
    f = H.field
    reps, project = _q_data(H)
    qdim = len(reps)
    qdeg = [el_degree(H, v) for v in reps]
    out = {}

    def add(key, c):
        cur = out.get(key, f.zero) + c
        if cur:
            out[key] = cur
        elif key in out:
            del out[key]

    for (i, j), c in tensor_el.items():
        if H.degrees[j] == 0:
            raise ValueError("second factor must have positive degree")
        qj = project({j: f.one})
        if i == H.unit:
            for t, ct in enumerate(qj):
                if ct:
                    add(("kq", t), c * ct)
            continue
        qi = project({i: f.one})
        for t1, c1 in enumerate(qi):
            if not c1:
                continue
            for t2, c2 in enumerate(qj):
                if not c2:
                    continue
                s = f.of(koszul(qdeg[t1], qdeg[t2]))
                add(("qq", t1, t2), c * c1 * c2)
                add(("qq", t2, t1), -s * c * c1 * c2)
    return out


# ---------------------------------------------------------------------------
# second-page differential: closed formula and zig-zag

def d2_formula(H, a, b, c, d):
    """Corner value of the second-page differential on [a (x) b (x) c (x) d]
    via triple Massey products of the entries, one defining system each.

    Requires all pairwise products of a, b, c, d to vanish.  Returns
    {'e2334': tensor, 'e2324': tensor} with tensors dicts over pairs of H
    class indices."""
    f = H.field
    a, b, c, d = (_as_class(H, u) for u in (a, b, c, d))
    da, db, dc, dd = (el_degree(H, u) for u in (a, b, c, d))
    for u, v in ((a, b), (a, c), (a, d), (b, c), (b, d), (c, d)):
        if any(H.multiply(u, v).values()):
            raise NotDefined("pairwise product is nonzero")

    def mp(u, v, w):
        return triple_massey(H, u, v, w).class_el

    def tens(left, right, s):
        out = {}
        for i, ci in left.items():
            for j, cj in right.items():
                out = vec_add(out, {(i, j): f.of(s) * ci * cj})
        return out

    e2334 = {}
    e2334 = vec_add(e2334, tens(a, mp(b, c, d), sign(da)))
    e2334 = vec_add(e2334, tens(mp(a, b, c), d, 1))
    e2334 = vec_add(e2334, tens(mp(b, a, d), c, sign(dc * da * db)))
    e2334 = vec_add(e2334, tens(mp(a, d, c), b,
                                -sign(db * dc + db * dd + dc * dd)))
    e2324 = {}
    e2324 = vec_add(e2324, tens(a, mp(c, b, d), sign(da + db * dc)))
    e2324 = vec_add(e2324, tens(mp(a, c, b), d, sign(db * dc)))
    e2324 = vec_add(e2324, tens(mp(c, a, d), b,
                                sign(db * dc + db * dd + da * dc)))
    e2324 = vec_add(e2324, tens(mp(a, d, b), c, -sign(db * dd + dd * dc)))
    return {"e2334": e2334, "e2324": e2324}


def d2_zigzag(bc, u):
    """Second-page differential of a block element of a bicomplex by the
    zig-zag rule.  u must be killed by the vertical differential; returns
    (u1, image) with u1 the correction and image = d'(u1) two columns over.
    Raises NotDefined when the vertical leak is not exact (the class does
    not survive to the second page)."""
    if not u:
        return {}, {}
    key = next(iter(u))
    p, q = bc.block_of[key]
    if bc.apply_dsecond(u):
        raise NotDefined("element is not a vertical cocycle")
    v = bc.apply_dprime(u)
    if not v:
        return {}, {}
    mat = bc.dsecond_matrix(p + 1, q - 1)
    rhs = bc._as_block(vec_scale(v, bc.field.of(-1)), p + 1, q)
    x = solve(mat, rhs)
    if x is NO_SOLUTION:
        raise NotDefined("the horizontal image is not vertically exact")
    u1 = bc.from_block(x, p + 1, q - 1)
    image = bc.apply_dprime(u1)
    return u1, image


def quadruple_tensor(bc, H, a, b, c, d):
    """The discrete-graph element a (x) b (x) c (x) d of a four-point
    reduced bicomplex, using cocycle representatives from H."""
    f = bc.field
    g0 = gr.Graph(4)
    reps = [_rep(H, _as_class(H, u)) for u in (a, b, c, d)]
    out = {}
    for i0, c0 in reps[0].items():
        for i1, c1 in reps[1].items():
            for i2, c2 in reps[2].items():
                for i3, c3 in reps[3].items():
                    out = vec_add(out, {(g0, (i0, i1, i2, i3)):
                                        c0 * c1 * c2 * c3})
    return out


def corner_element(bc, H, tensors):
    """Element of the two-edge corner blocks from {'e2334': t, 'e2324': t}
    tensors over H class pairs, using cocycle representatives.

    Both corner graphs isolate vertex 1 and join 2, 3, 4 into one component,
    so a tensor a (x) b lands in the two-slot key (a-rep, b-rep)."""
    g2324 = gr.Graph(4, [(2, 3), (2, 4)])
    g2334 = gr.Graph(4, [(2, 3), (3, 4)])
    out = {}
    for name, g in (("e2324", g2324), ("e2334", g2334)):
        for (i, j), c in tensors.get(name, {}).items():
            for i0, c0 in _rep(H, {i: bc.field.one}).items():
                for j0, c1 in _rep(H, {j: bc.field.one}).items():
                    out = vec_add(out, {(g, (i0, j0)): c * c0 * c1})
    return out


def matrix_obstruction_element(bc, H, x, L, B, C):
    """The four-point element whose second-page differential detects the
    matrix Massey product <L, B, C>:

        u = sum_ij x (x) a_i (x) b_ij (x) c_j
          - sum_ij (-1)^{|c||b| + |c||a| + |b||a|} x (x) c_j (x) b_ij (x) a_i
    """
    f = bc.field
    x = _as_class(H, x)
    L = [_as_class(H, u) for u in L]
    B = [[_as_class(H, u) for u in row] for row in B]
    C = [_as_class(H, u) for u in C]
    out = {}
    for i in range(len(L)):
        for j in range(len(C)):
            da = el_degree(H, L[i])
            db = el_degree(H, B[i][j])
            dc = el_degree(H, C[j])
            out = vec_add(out, quadruple_tensor(bc, H, x, L[i], B[i][j], C[j]))
            out = vec_add(out, quadruple_tensor(bc, H, x, C[j], B[i][j], L[i]),
                          f.of(-sign(dc * db + dc * da + db * da)))
    return out


def matrix_obstruction_check(bc, H, x, L, B, C):
    """Verify that the second-page differential of the matrix obstruction
    element equals [x (x) <L,B,C>] e2324 + 2 [x (x) <L,B,C>] e2334 as
    second-page classes.  Returns a dict with both classes and the verdict."""
    from .spectral import SpectralSequence
    f = bc.field
    u = matrix_obstruction_element(bc, H, x, L, B, C)
    _, img = d2_zigzag(bc, u)
    key = next(iter(u))
    p, q = bc.block_of[key]
    ss = SpectralSequence(bc)
    zz = ss.project_class(img, 2, p + 2, q - 1)
    m = matrix_massey(H, L, B, C).class_el
    t = {}
    for i, c in _as_class(H, x).items():
        for j, cj in m.items():
            t[(i, j)] = c * cj
    pred = corner_element(bc, H, {"e2324": t,
                                  "e2334": vec_scale(t, f.of(2))})
    pc = ss.project_class(pred, 2, p + 2, q - 1)
    return {"d2_class": zz, "predicted_class": pc, "match": zz == pc,
            "nonzero": bool(zz), "massey_class": m}


def thm3_detector(H, quadruples=None, use_zigzag=False, bc=None):
    """Search for quadruples of indecomposable classes certifying a nonzero
    second-page differential on the four-point complex.

    Per quadruple (a, b, c, d) with all pairwise products zero and the four
    triple Massey products defined, the sufficient conditions are: <b, c, d>
    is nonzero and indecomposable modulo its indeterminacy, and a is
    independent of b, c, d and <b, c, d>.  A finding is reported when the
    conditions hold or when the computed residual of the formula value is
    already nonzero; when use_zigzag is set, the zig-zag value on the
    supplied bicomplex is attached as well."""
    f = H.field
    qreps, project = _q_data(H)
    cand = [i for i in range(H.dim)
            if H.degrees[i] > 0 and any(project({i: f.one}))]
    quadruples = quadruples or [(x, y, z, w) for x in cand for y in cand
                                for z in cand for w in cand]
    findings = []
    for (ia, ib, ic, id_) in quadruples:
        a, b, c, d = ({t: f.one} for t in (ia, ib, ic, id_))
        if any(any(H.multiply(u, v).values())
               for u, v in ((a, b), (a, c), (a, d), (b, c), (b, d), (c, d))):
            continue
        try:
            mbcd = triple_massey(H, b, c, d)
            tensors = d2_formula(H, a, b, c, d)
        except NotDefined:
            continue
        core = mbcd.class_modulo_indeterminacy()
        indecomp = bool(core) and any(q_residual(H, core).values())
        span = SpanReducer(f)
        for u in (b, c, d, core):
            span.insert(u)
        independent = not span.contains(a)
        res = {name: obstruction_residual(H, t) if t else {}
               for name, t in tensors.items()}
        res_nonzero = any(any(k[0] == "qq" for k in r) for r in res.values())
        if not ((indecomp and independent) or res_nonzero):
            continue
        finding = {"quadruple": (ia, ib, ic, id_), "tensors": tensors,
                   "residuals": res, "massey_bcd": mbcd,
                   "hypotheses_met": indecomp and independent,
                   "residual_nonzero": res_nonzero}
        if use_zigzag and bc is not None:
            u0 = quadruple_tensor(bc, H, a, b, c, d)
            finding["zigzag"] = d2_zigzag(bc, u0)[1]
        findings.append(finding)
    return findings
