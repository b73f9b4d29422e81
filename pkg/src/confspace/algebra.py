"""Finite graded-commutative algebras and truncated free CDGAs.

Two concrete carriers share one small protocol (``field``, ``labels``,
``degrees``, ``unit``, ``mul_basis``, ``d_basis``, ``multiply``,
``differentiate``):

* :class:`Algebra` - basis plus structure constants, optional differential,
  optional top class.  All axioms are checked at construction time.
* :class:`TruncatedFreeCDGA` - free graded-commutative algebra on a finite
  set of generators, expanded into a monomial basis up to a truncation
  bound.  Products are computed exactly in the free algebra; a nonzero
  component above the bound raises :class:`Overflow` rather than being
  dropped.

Elements are sparse dicts ``{basis_index: scalar}``.
"""

from .exactlinalg import (
    Matrix, SpanReducer, kernel_basis, solve, NO_SOLUTION,
    vec_add, vec_scale,
)


class AxiomViolation(ValueError):
    def __init__(self, axiom, witnesses):
        self.axiom = axiom
        self.witnesses = witnesses
        super().__init__("axiom %r violated at %r" % (axiom, witnesses))


class DegeneratePairing(ValueError):
    def __init__(self, degree):
        self.degree = degree
        super().__init__("Poincare pairing degenerate in degree %d" % degree)


class Overflow(ArithmeticError):
    """A nonzero product or differential escaped the truncation bound."""

    def __init__(self, degree):
        self.degree = degree
        super().__init__("nonzero component in degree %d exceeds the truncation bound"
                         % degree)


def sign(k):
    return -1 if k % 2 else 1


def koszul(p, q):
    """(-1)^{p q}."""
    return -1 if (p % 2) and (q % 2) else 1


# ---------------------------------------------------------------------------
# element helpers (sparse dicts over basis indices)

def el_add(u, v, c=None):
    return vec_add(u, v, c)


def el_scale(u, c):
    return vec_scale(u, c)


def el_degree(alg, u):
    """Degree of a homogeneous element; None for 0, error if mixed."""
    degs = {alg.degrees[i] for i in u}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError("element not homogeneous: degrees %r" % sorted(degs))
    return degs.pop()


def format_element(alg, u):
    if not u:
        return "0"
    parts = []
    for i in sorted(u):
        c = u[i]
        lab = alg.labels[i]
        if c == alg.field.one:
            parts.append(lab if lab != "1" else "1")
        else:
            parts.append("%s*%s" % (alg.field.format(c), lab))
    return " + ".join(parts)


class Algebra:
    """Graded-commutative algebra given by a basis and structure constants."""

    def __init__(self, name, field, basis, unit, products,
                 differential=None, top=None, check=True):
        """basis: sequence of (label, degree).  products: dict
        (i, j) -> element; missing (j, i) entries are filled in by graded
        commutativity, missing unit products by unitality, anything else
        defaults to zero."""
        self.name = name
        self.field = field
        self.labels = [lab for lab, _ in basis]
        self.degrees = [deg for _, deg in basis]
        self.unit = unit
        self.top = top
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise AxiomViolation("distinct labels", self.labels)
        prods = {}
        for (i, j), el in products.items():
            prods[(i, j)] = {k: c for k, c in el.items() if c}
        for i in range(n):
            prods.setdefault((self.unit, i), {i: field.one})
            prods.setdefault((i, self.unit), {i: field.one})
        for i in range(n):
            for j in range(n):
                if (i, j) not in prods:
                    if (j, i) in prods:
                        s = koszul(self.degrees[i], self.degrees[j])
                        prods[(i, j)] = el_scale(prods[(j, i)],
                                                 field.of(s))
                    else:
                        prods[(i, j)] = {}
        self.products = prods
        self.differential = None
        if differential:
            self.differential = {i: {k: c for k, c in el.items() if c}
                                 for i, el in differential.items() if el}
        self._by_degree = {}
        for i, d in enumerate(self.degrees):
            self._by_degree.setdefault(d, []).append(i)
        if check:
            self._check_axioms()

    # -- protocol ----------------------------------------------------------
    # a finite algebra is complete: slices beyond the top are truly zero
    is_truncation = False

    @property
    def dim(self):
        return len(self.labels)

    def mul_basis(self, i, j):
        return self.products[(i, j)]

    def d_basis(self, i):
        if self.differential is None:
            return {}
        return self.differential.get(i, {})

    @property
    def has_differential(self):
        return self.differential is not None and any(self.differential.values())

    def multiply(self, u, v):
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                out = el_add(out, self.mul_basis(i, j), a * b)
        return out

    def differentiate(self, u):
        out = {}
        for i, a in u.items():
            out = el_add(out, self.d_basis(i), a)
        return out

    def basis_of_degree(self, d):
        return self._by_degree.get(d, [])

    def positive_indices(self):
        return [i for i, d in enumerate(self.degrees) if d > 0]

    @property
    def max_degree(self):
        return max(self.degrees)

    def element(self, label, coeff=None):
        i = self.labels.index(label)
        return {i: self.field.one if coeff is None else coeff}

    def show(self, u):
        return format_element(self, u)

    # -- load-time checks ---------------------------------------------------
    def _check_axioms(self):
        f = self.field
        degs = self.degrees
        if degs[self.unit] != 0:
            raise AxiomViolation("unit in degree 0", self.unit)
        if len(self.basis_of_degree(0)) != 1:
            raise AxiomViolation("degree-0 component is one-dimensional",
                                 self.basis_of_degree(0))
        n = self.dim
        for (i, j), el in self.products.items():
            for k in el:
                if degs[k] != degs[i] + degs[j]:
                    raise AxiomViolation("degree additivity", (i, j, k))
        for i in range(n):
            if self.products[(self.unit, i)] != {i: f.one}:
                raise AxiomViolation("unit acts as identity", i)
        for i in range(n):
            for j in range(n):
                s = koszul(degs[i], degs[j])
                lhs = self.products[(j, i)]
                rhs = el_scale(self.products[(i, j)], f.of(s))
                if lhs != rhs:
                    raise AxiomViolation("graded commutativity", (i, j))
        for i in range(n):
            for j in range(n):
                ij = self.products[(i, j)]
                for k in range(n):
                    left = self.multiply(ij, {k: f.one})
                    right = self.multiply({i: f.one}, self.products[(j, k)])
                    if left != right:
                        raise AxiomViolation("associativity", (i, j, k))
        if self.differential is not None:
            for i, el in self.differential.items():
                for k in el:
                    if degs[k] != degs[i] + 1:
                        raise AxiomViolation("differential has degree +1", (i, k))
            for i in range(n):
                if self.differentiate(self.d_basis(i)):
                    raise AxiomViolation("d o d = 0", i)
            for i in range(n):
                for j in range(n):
                    lhs = self.differentiate(self.products[(i, j)])
                    rhs = el_add(self.multiply(self.d_basis(i), {j: f.one}),
                                 self.multiply({i: f.one}, self.d_basis(j)),
                                 f.of(sign(degs[i])))
                    if lhs != rhs:
                        raise AxiomViolation("Leibniz rule", (i, j))


# ---------------------------------------------------------------------------
# Poincare duality data

class PoincareData:
    """Dual basis and diagonal class of a Poincare duality algebra."""

    def __init__(self, algebra, m, dual, diagonal):
        self.algebra = algebra
        self.m = m
        self.dual = dual          # list: basis index -> dual element (dict)
        self.diagonal = diagonal  # list of (i, j, scalar) for delta in A (x) A

    def pairing(self, u, v):
        """<u; v>: coefficient of the top class in u*v."""
        prod = self.algebra.multiply(u, v)
        return prod.get(self.algebra.top, self.algebra.field.zero)


def poincare_data(alg):
    """Dual basis {e_t'} with e_t * e_t' = top, and the diagonal class
    delta = sum_t (-1)^{|e_t'|} e_t (x) e_t'."""
    if alg.top is None:
        raise ValueError("algebra %r has no top class" % alg.name)
    if alg.has_differential:
        raise ValueError("Poincare data requires a zero differential")
    f = alg.field
    m = alg.degrees[alg.top]
    if alg.basis_of_degree(m) != [alg.top]:
        raise DegeneratePairing(m)
    if any(d > m for d in alg.degrees):
        raise DegeneratePairing(m)
    dual = [None] * alg.dim
    for p in sorted(set(alg.degrees)):
        rows_idx = alg.basis_of_degree(p)
        cols_idx = alg.basis_of_degree(m - p)
        if len(rows_idx) != len(cols_idx):
            raise DegeneratePairing(p)
        pair = Matrix(f, len(rows_idx), len(cols_idx))
        for r, i in enumerate(rows_idx):
            prod_row = {}
            for c, j in enumerate(cols_idx):
                val = alg.mul_basis(i, j).get(alg.top)
                if val:
                    prod_row[c] = val
            pair.rows[r] = prod_row
        for r, i in enumerate(rows_idx):
            rhs = {r: f.one}
            x = solve(pair, rhs)
            if x is NO_SOLUTION:
                raise DegeneratePairing(p)
            dual[i] = {cols_idx[c]: v for c, v in x.items()}
    diagonal = []
    for t in range(alg.dim):
        s = f.of(sign(m - alg.degrees[t]))
        for j, c in sorted(dual[t].items()):
            diagonal.append((t, j, s * c))
    return PoincareData(alg, m, dual, diagonal)


def indecomposables(alg):
    """Basis and projection for Q = A+/(A+ . A+).

    Returns (reps, project): reps are elements of A+ whose classes form a
    basis of Q; project maps any element to its Q-coordinate list (the unit
    coefficient is discarded)."""
    f = alg.field
    pos = alg.positive_indices()
    red = SpanReducer(f)
    for i in pos:
        for j in pos:
            prod = alg.mul_basis(i, j)
            if prod:
                red.insert(prod)
    pivset = set(red.rows)
    free = [i for i in pos if i not in pivset]
    reps = [{i: f.one} for i in free]

    def project(u):
        u = {i: c for i, c in u.items() if alg.degrees[i] > 0}
        r = red.reduce(u)
        return [r.get(i, f.zero) for i in free]

    return reps, project


# ---------------------------------------------------------------------------
# truncated free CDGA

def _mono_degree(mono, gdeg):
    return sum(gdeg[g] for g in mono)


def _mono_mul(m1, m2, godd):
    """Product of two normal-ordered monomials: (monomial, sign) or None."""
    o1 = [g for g in m1 if godd[g]]
    inv = 0
    for g in m2:
        if godd[g]:
            if g in o1:
                return None
            inv += sum(1 for h in o1 if h > g)
    merged = tuple(sorted(m1 + m2))
    return merged, sign(inv)


class TruncatedFreeCDGA:
    """Free graded-commutative algebra on finite generators, truncated.

    Odd generators are exterior, even generators polynomial.  The monomial
    basis contains every degree <= bound; products and differentials are
    evaluated exactly in the free algebra, and any nonzero component above
    the bound raises Overflow."""

    def __init__(self, name, field, generators, d_gens, bound):
        """generators: sequence of (label, degree > 0).  d_gens: dict
        label -> {monomial-label-tuple: int coeff} or element built later via
        monomials; here we accept dict label -> list of (tuple of gen labels,
        coeff)."""
        self.name = name
        self.field = field
        self.gen_labels = [lab for lab, _ in generators]
        self.gen_degrees = [deg for _, deg in generators]
        if any(d <= 0 for d in self.gen_degrees):
            raise ValueError("generator degrees must be positive")
        self.gen_odd = [d % 2 == 1 for d in self.gen_degrees]
        if bound < max(self.gen_degrees):
            raise ValueError("bound below a generator degree")
        self.bound = bound
        self._monomials = self._enumerate(bound)
        self._index = {m: i for i, m in enumerate(self._monomials)}
        self.degrees = [_mono_degree(m, self.gen_degrees) for m in self._monomials]
        self.labels = [self._mono_label(m) for m in self._monomials]
        self.unit = self._index[()]
        self.top = None
        # differential on generators, as monomial dicts
        self.d_on_gens = {}
        for lab, terms in (d_gens or {}).items():
            g = self.gen_labels.index(lab)
            el = {}
            for mono_labels, coeff in terms:
                mono = tuple(sorted(self.gen_labels.index(x) for x in mono_labels))
                if _mono_degree(mono, self.gen_degrees) != self.gen_degrees[g] + 1:
                    raise AxiomViolation("differential has degree +1", (lab, mono_labels))
                el[mono] = el.get(mono, field.zero) + field.of(coeff)
            self.d_on_gens[g] = {m: c for m, c in el.items() if c}
        self._by_degree = {}
        for i, d in enumerate(self.degrees):
            self._by_degree.setdefault(d, []).append(i)
        self._check_d_squared()

    def _enumerate(self, bound):
        monos = [()]
        for g, deg in enumerate(self.gen_degrees):
            ext = []
            for m in monos:
                d0 = _mono_degree(m, self.gen_degrees)
                kmax = 1 if self.gen_odd[g] else (bound - d0) // deg
                for k in range(1, kmax + 1):
                    ext.append(m + (g,) * k)
            monos.extend(ext)
        monos.sort(key=lambda m: (_mono_degree(m, self.gen_degrees), m))
        return monos

    def _mono_label(self, mono):
        if not mono:
            return "1"
        parts = []
        for g in sorted(set(mono)):
            k = mono.count(g)
            parts.append(self.gen_labels[g] if k == 1
                         else "%s^%d" % (self.gen_labels[g], k))
        return "*".join(parts)

    # -- protocol ----------------------------------------------------------
    # slices beyond the bound are cut off, not zero
    is_truncation = True

    @property
    def dim(self):
        return len(self._monomials)

    @property
    def has_differential(self):
        return any(self.d_on_gens.values())

    def basis_of_degree(self, d):
        return self._by_degree.get(d, [])

    def positive_indices(self):
        return [i for i, d in enumerate(self.degrees) if d > 0]

    @property
    def max_degree(self):
        return self.bound

    def monomial(self, i):
        return self._monomials[i]

    def index_of(self, mono):
        return self._index[mono]

    def element(self, label, coeff=None):
        i = self.labels.index(label)
        return {i: self.field.one if coeff is None else coeff}

    def show(self, u):
        return format_element(self, u)

    def _collect(self, acc):
        """Monomial dict -> basis-index element; Overflow on escape."""
        out = {}
        for mono, c in acc.items():
            if not c:
                continue
            i = self._index.get(mono)
            if i is None:
                raise Overflow(_mono_degree(mono, self.gen_degrees))
            out[i] = c
        return out

    def mul_basis(self, i, j):
        acc = {}
        res = _mono_mul(self._monomials[i], self._monomials[j], self.gen_odd)
        if res is not None:
            mono, s = res
            acc[mono] = self.field.of(s)
        return self._collect(acc)

    def multiply(self, u, v):
        acc = {}
        for i, a in u.items():
            for j, b in v.items():
                res = _mono_mul(self._monomials[i], self._monomials[j], self.gen_odd)
                if res is None:
                    continue
                mono, s = res
                c = acc.get(mono, self.field.zero) + a * b * self.field.of(s)
                acc[mono] = c
        return self._collect({m: c for m, c in acc.items() if c})

    def _d_mono(self, mono):
        """Differential of a monomial, as a monomial dict (exact, unbounded)."""
        acc = {}
        for pos in range(len(mono)):
            g = mono[pos]
            dg = self.d_on_gens.get(g)
            if not dg:
                continue
            pre = mono[:pos]
            post = mono[pos + 1:]
            s0 = sign(sum(self.gen_degrees[h] for h in pre))
            for dm, c in dg.items():
                r1 = _mono_mul(pre, dm, self.gen_odd)
                if r1 is None:
                    continue
                m1, s1 = r1
                r2 = _mono_mul(m1, post, self.gen_odd)
                if r2 is None:
                    continue
                m2, s2 = r2
                coeff = c * self.field.of(s0 * s1 * s2)
                tot = acc.get(m2, self.field.zero) + coeff
                acc[m2] = tot
        return {m: c for m, c in acc.items() if c}

    def d_basis(self, i):
        return self._collect(self._d_mono(self._monomials[i]))

    def differentiate(self, u):
        acc = {}
        for i, a in u.items():
            for m, c in self._d_mono(self._monomials[i]).items():
                tot = acc.get(m, self.field.zero) + a * c
                acc[m] = tot
        return self._collect({m: c for m, c in acc.items() if c})

    def _check_d_squared(self):
        for g, dg in self.d_on_gens.items():
            acc = {}
            for m, c in dg.items():
                for m2, c2 in self._d_mono(m).items():
                    tot = acc.get(m2, self.field.zero) + c * c2
                    acc[m2] = tot
            if any(acc.values()):
                raise AxiomViolation("d o d = 0", self.gen_labels[g])


def truncated_free_cdga(name, field, generators, d_gens, bound):
    return TruncatedFreeCDGA(name, field, generators, d_gens, bound)


# ---------------------------------------------------------------------------
# cohomology of a finite CDGA carrier

class CochainView:
    """Degreewise view of a carrier's underlying cochain complex.

    Degrees 0..max_degree (inclusive); requires max_degree + 1 within the
    carrier's basis so cocycles in the top requested degree are detected
    correctly."""

    def __init__(self, carrier, max_degree):
        if carrier.is_truncation and max_degree + 1 > carrier.max_degree:
            raise ValueError("max_degree + 1 exceeds the carrier's degree range")
        self.carrier = carrier
        self.max_degree = max_degree
        self.slices = {k: carrier.basis_of_degree(k)
                       for k in range(max_degree + 2)}
        self._pos = {k: {i: p for p, i in enumerate(idx)}
                     for k, idx in self.slices.items()}
        self._dmat = {}

    def local(self, u, k):
        pos = self._pos[k]
        return {pos[i]: c for i, c in u.items()}

    def unlocal(self, v, k):
        idx = self.slices[k]
        return {idx[p]: c for p, c in v.items()}

    def d_matrix(self, k):
        """Matrix of d: degree k -> k+1 in the slice bases."""
        if k not in self._dmat:
            src = self.slices[k]
            tgt_pos = self._pos[k + 1]
            cols = []
            for i in src:
                cols.append({tgt_pos[j]: c for j, c in self.carrier.d_basis(i).items()})
            self._dmat[k] = Matrix.from_columns(self.carrier.field, cols,
                                                len(self.slices[k + 1]))
        return self._dmat[k]

    def is_cocycle(self, u):
        return not self.carrier.differentiate(u)

    def solve_d(self, target):
        """x with d(x) = target, or NO_SOLUTION.  target must be homogeneous."""
        if not target:
            return {}
        k = el_degree(self.carrier, target) - 1
        m = self.d_matrix(k)
        x = solve(m, self.local(target, k + 1))
        if x is NO_SOLUTION:
            return NO_SOLUTION
        return self.unlocal(x, k)


class CohomologyAlgebra(Algebra):
    """Cohomology of a CDGA carrier, with the chosen cocycle representative
    of every class kept for secondary-operation (Massey) computations."""

    def __init__(self, name, field, basis, unit, products, top,
                 representatives, view):
        super().__init__(name, field, basis, unit, products, top=top)
        self.representatives = representatives  # index -> cochain in carrier
        self.view = view

    @property
    def ambient(self):
        return self.view.carrier

    def class_of(self, cocycle):
        """Cohomology class of a cocycle, as an element of this algebra."""
        if not cocycle:
            return {}
        view = self.view
        k = el_degree(view.carrier, cocycle)
        classes = [i for i in range(self.dim) if self.degrees[i] == k]
        nslice = len(view.slices[k])
        cols = [view.local(self.representatives[i], k) for i in classes]
        if k > 0:
            dm = view.d_matrix(k - 1)
            nb = len(view.slices[k - 1])
            cols += [dm.column(j) for j in range(nb)]
        m = Matrix.from_columns(self.field, cols, nslice)
        x = solve(m, view.local(cocycle, k))
        if x is NO_SOLUTION:
            raise ValueError("not a cocycle (or representative set incomplete)")
        return {classes[p]: c for p, c in x.items() if p < len(classes) and c}


def cohomology(carrier, max_degree):
    """Cohomology algebra of a carrier up to max_degree, with representatives.

    A carrier without differential is returned as-is conceptually: the result
    has the same dimensions and products degree by degree."""
    view = CochainView(carrier, max_degree)
    f = carrier.field
    reps = []
    basis = []
    for k in range(max_degree + 1):
        ker = kernel_basis(view.d_matrix(k))
        red = SpanReducer(f)
        if k > 0:
            dm = view.d_matrix(k - 1)
            for j in range(len(view.slices[k - 1])):
                red.insert(dm.column(j))
        cnt = 0
        for v in ker:
            if red.insert(v):
                rep = view.unlocal(v, k)
                reps.append(rep)
                basis.append(("h%d_%d" % (k, cnt), k))
                cnt += 1
    # nicer labels from the representatives when they are single monomials
    labels = []
    for rep, (default, k) in zip(reps, basis):
        if k == 0:
            labels.append("1")
        elif len(rep) == 1:
            i = next(iter(rep))
            labels.append("[%s]" % carrier.labels[i])
        else:
            labels.append("[%s]" % format_element(carrier, rep))
    seen = set()
    for idx, lab in enumerate(labels):
        if lab in seen:
            labels[idx] = lab + "_%d" % idx
        seen.add(labels[idx])
    basis = [(lab, k) for lab, (_, k) in zip(labels, basis)]
    unit = next(i for i, (_, k) in enumerate(basis) if k == 0)

    # normalize the unit representative to the carrier unit
    reps[unit] = {carrier.unit: f.one}

    # helper: express a cocycle in class coordinates at its degree
    def class_coords(w, k):
        classes = [i for i, (_, kk) in enumerate(basis) if kk == k]
        cols = [view.local(reps[i], k) for i in classes]
        if k > 0:
            dm = view.d_matrix(k - 1)
            cols += [dm.column(j) for j in range(len(view.slices[k - 1]))]
        m = Matrix.from_columns(f, cols, len(view.slices[k]))
        x = solve(m, view.local(w, k))
        assert x is not NO_SOLUTION
        return {classes[p]: c for p, c in x.items() if p < len(classes) and c}

    products = {}
    for i, (_, ki) in enumerate(basis):
        for j, (_, kj) in enumerate(basis):
            w = carrier.multiply(reps[i], reps[j])
            k = ki + kj
            if not w:
                products[(i, j)] = {}
            elif k <= max_degree:
                products[(i, j)] = class_coords(w, k)
            else:
                # above the computed range: the product must be exact
                x = CochainViewExtended(carrier, k).solve_d(w)
                if x is NO_SOLUTION:
                    raise Overflow(k)
                products[(i, j)] = {}
    top = None
    pos_degrees = [k for (_, k) in basis if k > 0]
    if pos_degrees:
        mtop = max(pos_degrees)
        top_classes = [i for i, (_, k) in enumerate(basis) if k == mtop]
        if len(top_classes) == 1:
            top = top_classes[0]
    return CohomologyAlgebra("H(%s)" % carrier.name, f, basis, unit,
                             products, top, reps, view)


class CochainViewExtended(CochainView):
    """Solve d(x) = w in a single degree above a view's range."""

    def __init__(self, carrier, degree):
        self.carrier = carrier
        self.max_degree = degree - 1
        self.slices = {degree - 1: carrier.basis_of_degree(degree - 1),
                       degree: carrier.basis_of_degree(degree)}
        self._pos = {k: {i: p for p, i in enumerate(idx)}
                     for k, idx in self.slices.items()}
        self._dmat = {}


# ---------------------------------------------------------------------------
# connected sum model

def connected_sum_model(alg, m):
    """Model of the connected sum with S^2 x S^{m-2}.

    Fibre product of alg with the cohomology of the sphere product over the
    ground field, with the top class of alg identified with the product of
    the two new sphere classes (labelled ``sx`` and ``sy``)."""
    if alg.top is None:
        raise ValueError("connected sum needs a top class")
    if alg.degrees[alg.top] != m:
        raise ValueError("top class is not in degree %d" % m)
    if m < 5:
        raise ValueError("need m >= 5 so the sphere factors have distinct degrees")
    f = alg.field
    n = alg.dim
    basis = list(zip(alg.labels, alg.degrees)) + [("sx", 2), ("sy", m - 2)]
    ix, iy = n, n + 1
    products = {}
    for (i, j), el in alg.products.items():
        products[(i, j)] = dict(el)
    products[(ix, ix)] = {}
    products[(iy, iy)] = {}
    products[(ix, iy)] = {alg.top: f.one}
    for i in range(n):
        if i == alg.unit:
            continue
        products[(i, ix)] = {}
        products[(ix, i)] = {}
        products[(i, iy)] = {}
        products[(iy, i)] = {}
    differential = None
    if alg.differential is not None:
        differential = {i: dict(el) for i, el in alg.differential.items()}
    return Algebra("%s#(S2xS%d)" % (alg.name, m - 2), f, basis, alg.unit,
                   products, differential=differential, top=alg.top)


def tensor_algebra(a, b, name=None):
    """Graded tensor product of two finite carriers given as Algebras."""
    if a.field != b.field:
        raise ValueError("mixed fields")
    f = a.field
    basis = []
    idx = {}
    for i in range(a.dim):
        for j in range(b.dim):
            li = a.labels[i] if i != a.unit else ""
            lj = b.labels[j] if j != b.unit else ""
            lab = (li + lj) or "1"
            idx[(i, j)] = len(basis)
            basis.append((lab, a.degrees[i] + b.degrees[j]))
    unit = idx[(a.unit, b.unit)]
    products = {}
    for (i1, j1), p in idx.items():
        for (i2, j2), q in idx.items():
            s = f.of(koszul(b.degrees[j1], a.degrees[i2]))
            left = a.mul_basis(i1, i2)
            right = b.mul_basis(j1, j2)
            el = {}
            for k1, c1 in left.items():
                for k2, c2 in right.items():
                    el = el_add(el, {idx[(k1, k2)]: s * c1 * c2})
            products[(p, q)] = el
    differential = {}
    for (i, j), p in idx.items():
        el = {}
        for k, c in a.d_basis(i).items():
            el = el_add(el, {idx[(k, j)]: c})
        s = f.of(sign(a.degrees[i]))
        for k, c in b.d_basis(j).items():
            el = el_add(el, {idx[(i, k)]: s * c})
        if el:
            differential[p] = el
    top = None
    if a.top is not None and b.top is not None:
        top = idx[(a.top, b.top)]
    return Algebra(name or "%s x %s" % (a.name, b.name), f, basis, unit,
                   products, differential=differential or None, top=top)
