"""Structured verification reports for the package's headline identities.

Every checker returns a plain dict:

    {"check": name, "inputs": {...}, "verdict": "pass" | "fail",
     "details": {...}}

so reports serialize to json directly and two runs produce identical bytes
(no timestamps, no machine-dependent fields).  Checkers raise nothing on a
failed identity; the verdict carries the outcome and the details say which
block broke."""

from .exactlinalg import rank, SpanReducer
from .algebra import el_degree
from . import graphs as gr
from .bgcomplex import build_AG, build_C, edge_multiply, phi_bar
from .spectral import SpectralSequence, total_cohomology
from .ctcomplex import CTComplex


def _report(check, inputs, ok, details):
    return {"check": check, "inputs": inputs,
            "verdict": "pass" if ok else "fail", "details": details}


def _total_range(bc):
    ks = [p + q for (p, q) in bc.blocks]
    return (min(ks), max(ks)) if ks else (0, 0)


def check_acyclic_ideal(alg, n):
    """The duplicate-target subcomplex has zero total cohomology, and the
    full and no-duplicate-target complexes have equal total cohomology."""
    j = build_AG(alg, n, gr.JFAMILY)
    full = build_AG(alg, n, gr.FULL)
    bar = build_AG(alg, n, gr.NODUPTARGET)
    kmin, kmax = _total_range(full)
    hj = total_cohomology(j, kmin, kmax) if j.total_dim() else {}
    hf = total_cohomology(full, kmin, kmax)
    hb = total_cohomology(bar, kmin, kmax)
    ok = all(v == 0 for v in hj.values()) and hf == hb
    return _report("acyclic-ideal", {"algebra": alg.name, "n": n},
                   ok, {"ideal_cohomology": hj, "full": hf, "quotient": hb})


def check_reduced_embedding(alg, n):
    """The embedding of the reduced bicomplex is an injective chain map,
    its image is killed by right multiplication with the edges at vertex 1,
    and both sides have the same total cohomology."""
    c = build_C(alg, n)
    bar = build_AG(alg, n, gr.NODUPTARGET)
    phi = phi_bar(c, bar)
    f = alg.field
    inj = SpanReducer(f)
    ok = True
    bad = None
    for (p, q), keys in sorted(c.blocks.items()):
        for key in keys:
            el = {key: f.one}
            img = phi(el)
            if not inj.insert(dict(img)):
                ok, bad = False, ("not injective", c.show_key(key))
                break
            # chain map
            lhs = phi(c.apply_total(el))
            rhs = bar.apply_total(img)
            diff = dict(lhs)
            for k2, v in rhs.items():
                w = diff.get(k2, f.zero) - v
                if w:
                    diff[k2] = w
                elif k2 in diff:
                    del diff[k2]
            if diff:
                ok, bad = False, ("not a chain map", c.show_key(key))
                break
            for r in range(2, n + 1):
                if edge_multiply(bar, img, 1, r):
                    ok, bad = False, ("image not killed by edge at vertex 1",
                                      c.show_key(key))
                    break
        if not ok:
            break
    hc = hb = None
    if ok:
        kmin, kmax = _total_range(bar)
        hc = total_cohomology(c, kmin, kmax)
        hb = total_cohomology(bar, kmin, kmax)
        ok = hc == hb
        if not ok:
            bad = ("total cohomology differs", hc, hb)
    return _report("reduced-embedding", {"algebra": alg.name, "n": n},
                   ok, {"failure": bad, "reduced": hc, "quotient": hb})


def check_collapse(alg, n, expect_at=2):
    """The graph-side spectral sequence collapses by the given page for a
    formal coefficient algebra; structurally E_3 = E_infinity whenever the
    reduced complex has only three columns."""
    bar = build_AG(alg, n, gr.NODUPTARGET)
    ss = SpectralSequence(bar)
    cp = ss.collapse_page()
    c = build_C(alg, n)
    ssc = SpectralSequence(c)
    cpc = ssc.collapse_page()
    ok = cp <= expect_at and cpc <= expect_at
    return _report("collapse", {"algebra": alg.name, "n": n},
                   ok, {"quotient_collapse_page": cp,
                        "reduced_collapse_page": cpc,
                        "reduced_columns": c.pmax + 1})


def kahler_differentials(alg):
    """Dims per internal degree of the cokernel of the three-point d1
    (the module of formal differentials of the algebra)."""
    c3 = build_C(alg, 3)
    out = {}
    for (p, q) in sorted(c3.blocks):
        if p != 1:
            continue
        r = rank(c3.dprime_matrix(0, q)) if (0, q) in c3.blocks else 0
        d = c3.block_dim(1, q) - r
        if d:
            out[q] = d
    return out


def projective_kernel(alg):
    """Dims per internal degree of the kernel of the three-point d1 (the
    image of the ambient-product restriction map)."""
    c3 = build_C(alg, 3)
    out = {}
    for (p, q) in sorted(c3.blocks):
        if p != 0:
            continue
        d = c3.block_dim(0, q) - rank(c3.dprime_matrix(0, q))
        if d:
            out[q] = d
    return out


def config_space_dims(alg, n, ct=None):
    """Dims of the configuration space cohomology per degree, from the
    second page of the tensor-power complex (valid when the sequence
    collapses there)."""
    ct = ct or CTComplex(alg, n)
    m = ct.m
    e2 = ct.e2_dims()
    out = {}
    for (p, h), d in e2.items():
        if d:
            k = h + p * (m - 1)
            out[k] = out.get(k, 0) + d
    return out


def check_three_point_sequence(alg):
    """Degreewise dimension identity of the short exact sequence for three
    points: dim H^k(F(M,3)) = dim ker^{3m-k} + dim coker^{3m-1-k} of the
    three-point d1."""
    m = max(alg.degrees)
    hf = config_space_dims(alg, 3)
    ker = projective_kernel(alg)
    cok = kahler_differentials(alg)
    table = {}
    ok = True
    for k in range(0, 3 * m + 1):
        lhs = hf.get(k, 0)
        rhs = ker.get(3 * m - k, 0) + cok.get(3 * m - 1 - k, 0)
        if lhs or rhs:
            table[k] = (lhs, rhs)
        if lhs != rhs:
            ok = False
    return _report("three-point-sequence", {"algebra": alg.name},
                   ok, {"per_degree": table, "kernel": ker, "cokernel": cok})


def check_four_point_corner(alg):
    """The corner blocks of the four-point reduced complex: per internal
    degree, dim E_2^{2,q} equals twice the formal-differentials dim (one
    copy per corner edge monomial)."""
    cok = kahler_differentials(alg)
    c4 = build_C(alg, 4)
    table = {}
    ok = True
    qs = {q for (p, q) in c4.blocks if p == 2} | set(cok)
    for q in sorted(qs):
        d = c4.block_dim(2, q) - rank(c4.dprime_matrix(1, q))
        want = 2 * cok.get(q, 0)
        if d or want:
            table[q] = (d, want)
        if d != want:
            ok = False
    return _report("four-point-corner", {"algebra": alg.name},
                   ok, {"per_degree": table})


def check_duality(alg, n):
    """Wrap the full pairing verification into a report."""
    from .duality import theorem1_check, DualityError
    try:
        res = theorem1_check(alg, n)
    except DualityError as e:
        return _report("duality", {"algebra": alg.name, "n": n},
                       False, {"failure": str(e)})
    signs = {"(%d,%d)" % k: (str(v) if v is not None else None)
             for k, v in sorted(res["signs"].items())}
    pairs = [{"tensor_block": list(b1), "graph_block": list(b2), "dim": d}
             for (b1, b2, d, _) in res["e2_pairs"]]
    return _report("duality", {"algebra": alg.name, "n": n},
                   True, {"adjointness_signs": signs, "second_page": pairs})


def check_anchors():
    """Sanity anchors: the reduced complex over a point vanishes for two or
    more points, two points on a sphere give total dimension 2, and the
    graph family counts are factorials."""
    from .catalog import load
    from math import factorial
    details = {}
    ok = True
    pt = load("point")
    for n in (2, 3, 4):
        d = build_C(pt, n).total_dim()
        details["reduced_point_n%d" % n] = d
        ok = ok and d == 0
    for m in (2, 3):
        c2 = build_C(load("s%d" % m), 2)
        kmin, kmax = _total_range(c2)
        h = total_cohomology(c2, kmin, kmax)
        tot = sum(h.values())
        details["two_points_s%d" % m] = {k: v for k, v in h.items() if v}
        ok = ok and tot == 2
    for n in range(1, 7):
        nb = sum(1 for _ in gr.enumerate_graphs(n, gr.NODUPTARGET))
        nh = sum(1 for _ in gr.enumerate_graphs(n, gr.HFAMILY))
        details["graphs_n%d" % n] = {"no_dup_target": nb, "reduced": nh}
        ok = ok and nb == factorial(n) and nh == factorial(n - 1)
    return _report("anchors", {}, ok, details)


def check_formal_negative(alg, max_degree=None):
    """Negative control: a formal algebra has no Massey obstruction
    quadruples and its four-point sequence collapses at the second page."""
    from .massey import thm3_detector
    from .algebra import cohomology

    if alg.has_differential:
        raise ValueError("negative control expects a formal algebra")
    md = max_degree if max_degree is not None else max(alg.degrees)
    H = cohomology(alg, md)
    findings = thm3_detector(H)
    c4 = build_C(alg, 4)
    cp = SpectralSequence(c4).collapse_page()
    ok = not findings and cp <= 2
    return _report("formal-negative-control", {"algebra": alg.name},
                   ok, {"findings": len(findings), "collapse_page": cp})
