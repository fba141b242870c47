"""Deterministic JSON/CSV serialization for every external interface.

Scalars in JSON files may be numbers or exact rational strings "p/q";
rationals survive the round trip exactly.  All emitted JSON uses sorted
keys and 17-significant-digit floats so identical inputs produce
byte-identical outputs.
"""

from __future__ import annotations

import json
from fractions import Fraction

from ._scalars import Cyc, as_fraction

__all__ = [
    "canonical_dumps", "dump_json", "load_json", "load_f_matrix",
    "save_f_matrix", "load_hopf", "hopf_from_dict", "load_cocycle", "load_triple",
    "save_toy_triple", "dimension_table_csv", "spectrum_csv",
    "spectrum_json", "profile_json",
]


def _fmt(x) -> object:
    if isinstance(x, bool) or isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        if x == int(x) and abs(x) < 1e15:
            return float(f"{x:.1f}")
        return float(f"{x:.17g}")
    if isinstance(x, complex):
        return [_fmt(x.real), _fmt(x.imag)]
    if isinstance(x, dict):
        return {str(k): _fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    return x


def canonical_dumps(obj) -> str:
    return json.dumps(_fmt(obj), sort_keys=True, indent=2,
                      separators=(",", ": ")) + "\n"


def dump_json(obj, path):
    with open(path, "w") as fh:
        fh.write(canonical_dumps(obj))


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _scalar_in(v):
    """A number or 'p/q' string to float (used for matrix entries)."""
    if isinstance(v, str):
        return float(Fraction(v))
    return float(v)


def _exact_in(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, int):
        return Fraction(v)
    return v


def _cyc_in(pair) -> Cyc:
    """[re, im] with rational-string or numeric entries to an exact Cyc."""
    if isinstance(pair, (int, float, str)):
        pair = [pair, 0]
    re, im = pair
    re = _exact_in(re)
    im = _exact_in(im)
    if isinstance(re, float):
        re = Fraction(re).limit_denominator(10 ** 12)
    if isinstance(im, float):
        im = Fraction(im).limit_denominator(10 ** 12)
    return Cyc.gauss(re, im)


# -- F matrices --

def load_f_matrix(path):
    """{"n": int, "entries": [[re, im], ...] row-major,
    "lambda": [rationals] optional} -> OrthogonalMatrixSpec."""
    from .repcat import check_orthogonal_matrix
    data = load_json(path)
    n = int(data["n"])
    flat = data["entries"]
    if len(flat) != n * n:
        raise ValueError("entries length must be n^2 (row-major)")
    entries = [[complex(_scalar_in(flat[i * n + j][0]),
                        _scalar_in(flat[i * n + j][1]))
                for j in range(n)] for i in range(n)]
    rep = check_orthogonal_matrix(entries)
    if not rep.admissible:
        return rep
    spec = rep.spec
    lams = data.get("lambda")
    if lams is not None:
        lam_sq = [as_fraction(v) ** 2 for v in lams]
        spec = spec.with_exact_lams(lam_sq)
        from dataclasses import replace as _replace
        rep = type(rep)(rep.admissible, rep.c, rep.shape, rep.reason, spec)
    return rep


def save_f_matrix(spec, path, lams=None):
    flat = []
    for row in spec.entries:
        for v in row:
            flat.append([complex(v).real, complex(v).imag])
    data = {"n": spec.n, "entries": flat}
    if lams is not None:
        data["lambda"] = [str(as_fraction(v)) for v in lams]
    dump_json(data, path)


# -- Hopf algebras and cocycles --

def load_hopf(path):
    """Structure-tensor file to FiniteHopfAlgebra.

    {"dim": N, "product": [[i,j,k,re,im],...], "coproduct":
    [[i,j,k,re,im],...], "counit": [[re,im],...], "antipode": [[..]],
    "star": [[..]], "unit": idx or [[i,re,im],...]}
    """
    return hopf_from_dict(load_json(path))


def hopf_from_dict(data):
    from .hopf_twist.algebra import FiniteHopfAlgebra
    dim = int(data["dim"])
    product = {}
    for i, j, k, re, im in data["product"]:
        product.setdefault((int(i), int(j)), {})[int(k)] = _cyc_in([re, im])
    coproduct = {}
    for i, j, k, re, im in data["coproduct"]:
        coproduct.setdefault(int(i), {})[(int(j), int(k))] = _cyc_in([re, im])
    counit = {i: _cyc_in(pair) for i, pair in enumerate(data["counit"])}
    antipode = {i: {j: _cyc_in(v) for j, v in enumerate(row)}
                for i, row in enumerate(data["antipode"])}
    star = {i: {j: _cyc_in(v) for j, v in enumerate(row)}
            for i, row in enumerate(data["star"])}
    unit = data["unit"]
    if isinstance(unit, int):
        unit = {unit: Cyc.rational(1)}
    else:
        unit = {int(i): _cyc_in([re, im]) for i, re, im in unit}
    return FiniteHopfAlgebra(dim, product, unit, star, coproduct, counit,
                             antipode)


def save_hopf(H, path):
    data = {
        "dim": H.dim,
        "product": [[i, j, k, _cyc_out(c)[0], _cyc_out(c)[1]]
                    for (i, j), v in sorted(H.product.items())
                    for k, c in sorted(v.items())],
        "coproduct": [[i, j, k, _cyc_out(c)[0], _cyc_out(c)[1]]
                      for i, v in sorted(H.coproduct.items())
                      for (j, k), c in sorted(v.items())],
        "counit": [_cyc_out(H.counit.get(i, Cyc.rational(0)))
                   for i in range(H.dim)],
        "antipode": [[_cyc_out(H.antipode.get(i, {}).get(j, Cyc.rational(0)))
                      for j in range(H.dim)] for i in range(H.dim)],
        "star": [[_cyc_out(H.star_table.get(i, {}).get(j, Cyc.rational(0)))
                  for j in range(H.dim)] for i in range(H.dim)],
        "unit": [[i, *_cyc_out(c)] for i, c in sorted(H.unit.items())],
    }
    dump_json(data, path)


def _cyc_out(c: Cyc):
    if c.is_rational():
        return [str(c.rational_value()), "0"]
    if c.n in (1, 2, 4):  # Gaussian rational: both parts exact
        re = (c + c.conj()) / 2
        im = (c - c.conj()) / (2 * Cyc.i())
        return [str(re.rational_value()), str(im.rational_value())]
    z = c.to_complex()
    return [z.real, z.imag]


def load_cocycle(path, H):
    """{"dim": N, "sigma": [[re, im], ...]} row-major to a DualCocycle."""
    from .hopf_twist.cocycle import DualCocycle
    data = load_json(path)
    dim = int(data["dim"])
    if dim != H.dim:
        raise ValueError("cocycle dimension does not match the Hopf algebra")
    flat = data["sigma"]
    if len(flat) != dim * dim:
        raise ValueError("sigma must have n^2 row-major entries")
    table = {}
    for i in range(dim):
        for j in range(dim):
            c = _cyc_in(flat[i * dim + j])
            if not c.is_zero():
                table[(i, j)] = c
    return DualCocycle(H, table)


def save_cocycle(sigma, path):
    H = sigma.H
    flat = []
    for i in range(H.dim):
        for j in range(H.dim):
            flat.append(_cyc_out(sigma.table.get((i, j), Cyc.rational(0))))
    dump_json({"dim": H.dim, "sigma": flat}, path)


# -- finite equivariant triples --

def load_triple(path):
    """Explicit structure-tensor description of a finite equivariant triple.

    {"hopf": <hopf object>, "algebra": {"dim", "product", "star", "unit",
    "coaction": [[i,a,h,re,im],...]}, "gram": [[..]], "rep": [[[..]]..],
    "corep": [[[ [h,re,im], ...] ..]..], "dirac": [[..]]}
    """
    from .hopf_twist.algebra import ComoduleAlgebra, StarAlgebra
    from .hopf_twist.galois import FiniteEquivariantTriple
    data = load_json(path)
    H = hopf_from_dict(data["hopf"])
    alg = data["algebra"]
    dim = int(alg["dim"])
    product = {}
    for i, j, k, re, im in alg["product"]:
        product.setdefault((int(i), int(j)), {})[int(k)] = _cyc_in([re, im])
    star = {i: {j: _cyc_in(v) for j, v in enumerate(row)}
            for i, row in enumerate(alg["star"])}
    unit = alg["unit"]
    unit = {unit: Cyc.rational(1)} if isinstance(unit, int) else \
        {int(i): _cyc_in([re, im]) for i, re, im in unit}
    coaction = {}
    for i, a, h, re, im in alg["coaction"]:
        coaction.setdefault(int(i), {})[(int(a), int(h))] = _cyc_in([re, im])
    A = ComoduleAlgebra(StarAlgebra(dim, product, unit, star), H, coaction,
                        side="right")
    gram = [[_cyc_in(v) for v in row] for row in data["gram"]]
    rep = [[[_cyc_in(v) for v in row] for row in mat] for mat in data["rep"]]
    corep = [[{int(h): _cyc_in([re, im]) for h, re, im in cell}
              for cell in row] for row in data["corep"]]
    dirac = [[_cyc_in(v) for v in row] for row in data["dirac"]]
    return FiniteEquivariantTriple(H=H, A=A, gram=gram, rep=rep,
                                   corep=corep, dirac=dirac)


def save_toy_triple(path):
    """Write the stock graded toy triple as an explicit JSON file."""
    from .hopf_twist.examples import toy_triple_z2z2
    T = toy_triple_z2z2()
    H = T.H
    hopf = {
        "dim": H.dim,
        "product": [[i, j, k, _cyc_out(c)[0], _cyc_out(c)[1]]
                    for (i, j), v in sorted(H.product.items())
                    for k, c in sorted(v.items())],
        "coproduct": [[i, j, k, _cyc_out(c)[0], _cyc_out(c)[1]]
                      for i, v in sorted(H.coproduct.items())
                      for (j, k), c in sorted(v.items())],
        "counit": [_cyc_out(H.counit.get(i, Cyc.rational(0)))
                   for i in range(H.dim)],
        "antipode": [[_cyc_out(H.antipode.get(i, {}).get(j, Cyc.rational(0)))
                      for j in range(H.dim)] for i in range(H.dim)],
        "star": [[_cyc_out(H.star_table.get(i, {}).get(j, Cyc.rational(0)))
                  for j in range(H.dim)] for i in range(H.dim)],
        "unit": [[i, *_cyc_out(c)] for i, c in sorted(H.unit.items())],
    }
    alg = T.A.algebra
    data = {
        "hopf": hopf,
        "algebra": {
            "dim": alg.dim,
            "product": [[i, j, k, _cyc_out(c)[0], _cyc_out(c)[1]]
                        for (i, j), v in sorted(alg.product.items())
                        for k, c in sorted(v.items())],
            "star": [[_cyc_out(alg.star_table.get(i, {}).get(
                j, Cyc.rational(0))) for j in range(alg.dim)]
                for i in range(alg.dim)],
            "unit": [[i, *_cyc_out(c)] for i, c in sorted(alg.unit.items())],
            "coaction": [[i, a, h, _cyc_out(c)[0], _cyc_out(c)[1]]
                         for i, v in sorted(T.A.coaction.items())
                         for (a, h), c in sorted(v.items())],
        },
        "gram": [[_cyc_out(v) for v in row] for row in T.gram],
        "rep": [[[_cyc_out(v) for v in row] for row in mat]
                for mat in T.rep],
        "corep": [[[[h, *_cyc_out(c)] for h, c in sorted(cell.items())]
                   for cell in row] for row in T.corep],
        "dirac": [[_cyc_out(v) for v in row] for row in T.dirac],
    }
    dump_json(data, path)


# -- tables --

def dimension_table_csv(rows) -> str:
    out = ["label,classical_dim,quantum_dim"]
    for label, classical, quantum in rows:
        q = "" if quantum is None else str(quantum)
        out.append(f"{label},{classical},{q}")
    return "\n".join(out) + "\n"


def spectrum_csv(table) -> str:
    out = ["eigenvalue,multiplicity,labels"]
    for ev, mult, labels in table.rows:
        out.append(f"{ev},{mult},{'|'.join(labels)}")
    return "\n".join(out) + "\n"


def spectrum_json(table) -> dict:
    return {"spectrum": [{"eigenvalue": str(ev), "multiplicity": mult,
                          "labels": list(labels)}
                         for ev, mult, labels in table.rows]}


def profile_json(profile) -> dict:
    blocks = []
    for b in profile.blocks:
        blocks.append({
            "label": str(b.label),
            "family": b.label.family,
            "index": b.label.index,
            "irrep_dim": b.d,
            "multiplicity_dim": b.w,
            "dirac": [[str(v) for v in row] for row in b.dirac],
            "twist": [[str(v) for v in row] for row in b.twist],
            "f_trace": str(b.fblock.trace),
            "f_diagonal": ([str(v) for v in b.fblock.diagonal]
                           if b.fblock.matrix is not None else None),
        })
    return {"blocks": blocks, "total_dim": profile.total_dim}
