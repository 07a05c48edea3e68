"""Code-file loading, random codes, and the verification pipeline."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from . import betti as bt
from .codes import (
    LinearCode,
    code_params,
    ghw_generator,
    ghw_subcode_oracle,
    ghw_wei,
    min_distance,
    parity_check,
)
from .errors import DegenerateDual, InputError, OTCodesError, RankDeficient, TooLarge
from .exactfield import DenseMatrix, PrimeField, rank
from .matroid import broken_circuits, circuits, components, loops, nbc_f_vector
from .orlikterao import alpha, check_proudfoot_speyer, ot_presentation
from .polyring import (
    GroebnerBasis,
    Polynomial,
    TermOrder,
    format_monomial,
    hilbert_function,
    support_monomial,
)

CHECK_NAMES = (
    "ghw_consistency",
    "thm_2_3",
    "thm_3_4",
    "jove_identity",
    "prs_universal",
    "macaulay_hs",
    "dk_identity",
    "reg_identity",
    "cm_pdim",
    "conjecture",
    "mult_conj",
)
ASSERTED_CHECKS = CHECK_NAMES[:9]
SAMPLED_ORDERS = 10


@dataclass
class CodeFile:
    field: int
    kind: str
    matrix: list[list[int]]
    name: str | None = None
    order: list[int] | None = None


def parse_code_file(data: Any) -> CodeFile:
    if not isinstance(data, dict):
        raise InputError("code file must be a JSON object")
    unknown = set(data) - {"name", "field", "kind", "matrix", "order"}
    if unknown:
        raise InputError(f"unknown keys: {sorted(unknown)}")
    p = data.get("field")
    if not isinstance(p, int) or isinstance(p, bool):
        raise InputError("'field' must be an integer")
    kind = data.get("kind", "generator")
    if kind not in ("generator", "parity_check"):
        raise InputError("'kind' must be 'generator' or 'parity_check'")
    matrix = data.get("matrix")
    if (not isinstance(matrix, list) or not matrix
            or not all(isinstance(r, list) and r for r in matrix)
            or not all(isinstance(v, int) and not isinstance(v, bool) for r in matrix for v in r)):
        raise InputError("'matrix' must be a nonempty list of nonempty integer rows")
    if len({len(r) for r in matrix}) != 1:
        raise InputError("'matrix' rows must all have the same length")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError("'name' must be a string")
    order = data.get("order")
    if order is not None:
        n = len(matrix[0])
        if not isinstance(order, list) or sorted(order) != list(range(1, n + 1)):
            raise InputError(f"'order' must be a permutation of 1..{n}")
    return CodeFile(p, kind, matrix, name, order)


def code_from_file(cf: CodeFile) -> LinearCode:
    try:
        F = PrimeField(cf.field)
    except ValueError as e:
        raise InputError(str(e)) from None
    M = DenseMatrix.from_rows(F, cf.matrix)
    if rank(M) != M.nrows:
        raise InputError(f"matrix has rank {rank(M)} but {M.nrows} rows (need full row rank)")
    try:
        if cf.kind == "generator":
            return LinearCode(M, cf.name)
        return LinearCode.from_parity_check(M, cf.name)
    except RankDeficient as e:
        raise InputError(str(e)) from None


def fixture_path(name: str) -> Path:
    base = resources.files("otcodes") / "fixtures"
    return Path(str(base / (name if name.endswith(".json") else name + ".json")))


def fixture_names() -> list[str]:
    base = Path(str(resources.files("otcodes") / "fixtures"))
    return sorted(p.stem for p in base.glob("*.json"))


def load(path: str | Path) -> tuple[LinearCode, CodeFile]:
    """Load a code file; bare names resolve to bundled fixtures."""
    path = Path(path)
    if not path.exists() and path.suffix == "" and path.name in fixture_names():
        path = fixture_path(path.name)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e})") from None
    cf = parse_code_file(data)
    return code_from_file(cf), cf


def parse_order(text: str | Sequence[int] | None, n: int) -> TermOrder:
    """1-based priority list (greatest first) to a TermOrder; None means y1 > ... > yn."""
    if text is None:
        return TermOrder.grevlex(n)
    if isinstance(text, str):
        try:
            vals = [int(x) for x in text.replace(" ", "").split(",") if x]
        except ValueError:
            raise InputError(f"bad order {text!r}") from None
    else:
        vals = list(text)
    if sorted(vals) != list(range(1, n + 1)):
        raise InputError(f"order must be a permutation of 1..{n}")
    return TermOrder(tuple(v - 1 for v in vals))


def random_code(seed: int, n: int, k: int, p: int, require_d2: bool = True,
                max_attempts: int = 10_000) -> LinearCode:
    """Seeded random full-rank [n, k] code over F_p.

    Draws with d = 1 are rejected when ``require_d2`` is set; the retry uses
    the next sub-seed so the result depends only on the arguments.
    """
    if not 1 <= k < n <= 12:
        raise ValueError("need 1 <= k < n <= 12")
    if p not in (2, 3, 5, 7):
        raise ValueError("p must be one of 2, 3, 5, 7")
    for sub in range(max_attempts):
        rng = random.Random(seed * 1_000_003 + sub)
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(k)]
        M = DenseMatrix.from_rows(p, rows)
        if rank(M) != k:
            continue
        C = LinearCode(M, f"random(seed={seed}, n={n}, k={k}, p={p})")
        if require_d2 and min_distance(C) < 2:
            continue
        return C
    raise RuntimeError("no acceptable code found")


def sampled_orders(n: int, seed: int, count: int = SAMPLED_ORDERS) -> list[TermOrder]:
    rng = random.Random(seed)
    return [TermOrder(tuple(rng.sample(range(n), n))) for _ in range(count)]


def _order_labels(order: TermOrder) -> list[int]:
    return [v + 1 for v in order.priority]


def _betti_block(B: bt.BettiTable, S: bt.ResolutionSummary | None) -> dict:
    out: dict[str, Any] = {"betti": B.triples()}
    if S is not None:
        out.update({"t": list(S.t), "T": list(S.T), "pdim": S.pdim, "reg": S.reg,
                    "multiplicity": S.multiplicity, "cm": S.cm})
    return out


def _summary_or_none(B: bt.BettiTable) -> bt.ResolutionSummary | None:
    return None if B.truncated else bt.summarize(B)


@dataclass
class VerificationReport:
    name: str | None
    field: int
    order: list[int]
    jmax: int
    seed: int
    params: dict
    circuits: list[list[int]]
    components: list[list[int]]
    loops: list[int]
    ot: dict | None
    sr: dict
    checks: list[dict] = field(default_factory=list)

    def check(self, name: str) -> dict:
        return next(c for c in self.checks if c["name"] == name)

    def failed(self) -> list[str]:
        return [c["name"] for c in self.checks if c["name"] in ASSERTED_CHECKS and c["status"] == "fail"]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "field": self.field,
            "order": self.order,
            "jmax": self.jmax,
            "seed": self.seed,
            "params": self.params,
            "circuits": self.circuits,
            "components": self.components,
            "loops": self.loops,
            "ot": self.ot,
            "sr": self.sr,
            "checks": self.checks,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def render(self) -> str:
        P = self.params
        lines = [f"code: {self.name or '(unnamed)'} over F_{self.field}",
                 f"[n, k, d] = [{P['n']}, {P['k']}, {P['d']}]   ghw = {P['ghw']}",
                 f"circuits ({len(self.circuits)}): " + " ".join("{" + ",".join(map(str, c)) + "}"
                                                             for c in self.circuits),
                 f"components: {len(self.components)}   loops: {self.loops}"]
        if self.ot is not None:
            lines.append(f"OT: alpha = {self.ot['alpha']}  t = {self.ot.get('t')}  T = {self.ot.get('T')}  "
                         f"pdim = {self.ot.get('pdim')}  reg = {self.ot.get('reg')}")
        lines.append(f"SR: t = {self.sr.get('t')}  T = {self.sr.get('T')}  pdim = {self.sr.get('pdim')}")
        lines.append("checks:")
        for c in self.checks:
            lines.append(f"  {c['status']:<9} {c['name']:<16} {c['details']}")
        return "\n".join(lines)


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def verify(code: LinearCode, order: TermOrder | Sequence[int] | None = None, jmax: int | None = None,
           seed: int = 0, name: str | None = None) -> VerificationReport:
    """Compute everything for one code and evaluate the named checks.

    Computation errors inside a check mark that check "fail" with the
    message; the report is always produced.
    """
    n, k, p = code.n, code.k, code.p
    if not isinstance(order, TermOrder):
        order = parse_order(order, n) if order is not None else TermOrder.grevlex(n)
    jmax = n + 2 if jmax is None else jmax
    results: dict[str, dict] = {}

    def record(check: str, status: str, details: str):
        results[check] = {"name": check, "status": status, "details": details}

    d = min_distance(code)
    if k < n:
        H = parity_check(code)
    else:
        H = DenseMatrix.from_rows(code.field, [], n)
    params = code_params(code, H if k < n else None)
    cs = circuits(H)
    comps = components(cs, n)
    zero_cols = list(loops(H))

    # 1. three routes for generalized Hamming weights
    try:
        wei = [ghw_wei(H, r) if k < n else r for r in range(1, k + 1)]
        gen = [ghw_generator(code, r) for r in range(1, k + 1)]
        try:
            sub = [ghw_subcode_oracle(code, r) for r in range(1, k + 1)]
            sub_note = f"subcode={sub}"
        except TooLarge:
            sub, sub_note = None, "subcode oracle skipped (too many subspaces)"
        ok = wei == gen and (sub is None or sub == wei) and wei[0] == d and \
            all(a < b for a, b in zip(wei, wei[1:]))
        record("ghw_consistency", _status(ok), f"wei={wei} generator={gen} {sub_note} d={d}")
    except OTCodesError as e:
        record("ghw_consistency", "fail", f"error: {e}")
    ghw = list(params.ghw)

    # SR ideal of the independence complex of H (minimal nonfaces = circuits)
    sr_monos = [support_monomial(n, c.support) for c in cs]
    sr_gb = GroebnerBasis(order, tuple(Polynomial.monomial(n, p, m) for m in sr_monos))
    sr_table = bt.koszul_betti(sr_gb, j_max=jmax, n=n, p=p)
    sr_summary = _summary_or_none(sr_table)
    sr_block = _betti_block(sr_table, sr_summary)
    sr_block["generators"] = [format_monomial(m) for m in sr_monos]

    # 4. generalized Hamming weights are the minimal SR shifts
    if sr_summary is None:
        record("jove_identity", "fail", "SR Betti table truncated")
    else:
        t_sr = [sr_table.t(r) for r in range(1, k + 1)]
        record("jove_identity", _status(t_sr == ghw), f"d_r={ghw} t_r(SR)={t_sr}")

    # 7. top weight is the support size
    support = n - sum(1 for j in range(n) if not any(code.G.column(j)))
    loops_form = n - len(zero_cols)
    ok = ghw[-1] == support
    record("dk_identity", _status(ok),
           f"d_k={ghw[-1]} n-ell={support} (ell = zero columns of G = {n - support}); "
           f"n-|loops(H)|={loops_form}")

    ot_block = None
    ot_checks = ("thm_2_3", "thm_3_4", "prs_universal", "macaulay_hs", "reg_identity", "cm_pdim",
                 "conjecture", "mult_conj")
    try:
        if d < 2:
            raise DegenerateDual("d = 1: the dual arrangement has a zero vector")
        pres = ot_presentation(H)
    except DegenerateDual as e:
        for c in ot_checks:
            record(c, "skipped", f"DegenerateDual: {e}")
        pres = None

    if pres is not None:
        a = alpha(pres)
        record("thm_2_3", _status(d == a + 1), f"d={d} alpha={a}")

        ps_main = check_proudfoot_speyer(pres, order)
        ot_table = bt.koszul_betti(ps_main.basis, j_max=jmax, n=n, p=p)
        ot_summary = _summary_or_none(ot_table)
        ot_block = {"alpha": a, **_betti_block(ot_table, ot_summary),
                    "minimal_generator_degrees": sorted(j for (i, j), b in ot_table.entries.items()
                                                        if i == 1 for _ in range(b)),
                    "initial_ideal": [format_monomial(m) for m in ps_main.initial]}

        # 3. second weight sits one or two above t_2
        if k < 2:
            record("thm_3_4", "skipped", "k < 2: no second weight")
        elif ot_summary is None:
            record("thm_3_4", "fail", "OT Betti table truncated")
        else:
            t2 = ot_table.t(2)
            if t2 is None:
                record("thm_3_4", "fail", "no second syzygies")
            else:
                ok = t2 + 1 <= ghw[1] <= t2 + 2
                which = "lower" if ghw[1] == t2 + 1 else "upper" if ghw[1] == t2 + 2 else "neither"
                record("thm_3_4", _status(ok), f"t2={t2} d2={ghw[1]} (attains {which} bound)")

        # 5. circuit polynomials form a universal Groebner basis
        orders = [order] + sampled_orders(n, seed)
        bad = []
        results_by_order = [(order, ps_main)]
        for o in orders[1:]:
            res = check_proudfoot_speyer(pres, o)
            results_by_order.append((o, res))
        for o, res in results_by_order:
            if not res.holds:
                bad.append(_order_labels(o))
        record("prs_universal", _status(not bad),
               f"{len(orders)} orders, failures: {bad}" if bad else f"holds on {len(orders)} orders")

        # 6. Hilbert series agree across OT, its initial ideals and the NBC complexes
        msgs = []
        ok = True
        check = bt.hs_check(ot_table, ps_main.initial, n, jmax,
                            nbc_f_vector(broken_circuits(cs, order.priority), n))
        ok &= check.ok
        if not check.ok:
            msgs.append(f"OT vs in(given order): {check.details}")
        for o, res in results_by_order[1:]:
            hf = [hilbert_function(list(res.initial), m, n) for m in range(jmax + 1)]
            fs = bt.series_from_f_vector(nbc_f_vector(broken_circuits(cs, o.priority), n), jmax)
            if tuple(hf) != check.hilbert or tuple(fs) != check.hilbert:
                ok = False
                msgs.append(f"order {_order_labels(o)} disagrees")
        sr_check = bt.hs_check(sr_table, sr_monos, n, jmax, nbc_f_vector([c.support for c in cs], n))
        ok &= sr_check.ok
        if not sr_check.ok:
            msgs.append(f"SR: {sr_check.details}")
        record("macaulay_hs", _status(ok),
               "; ".join(msgs) if msgs else
               f"HF {list(check.hilbert[:6])}... equal for OT, {len(orders)} initial ideals, "
               f"NBC f-vectors; SR table consistent (to degree {jmax})")

        if ot_summary is None:
            for c in ("reg_identity", "cm_pdim", "conjecture", "mult_conj"):
                record(c, "fail", "OT Betti table truncated")
        else:
            c_count = comps.c
            Tk = ot_table.T(k)
            ok = ot_summary.reg == n - k - c_count and Tk is not None and n == Tk + c_count
            record("reg_identity", _status(ok),
                   f"reg={ot_summary.reg} n-k-c={n - k - c_count} T_k={Tk} c={c_count} n={n}")
            record("cm_pdim", _status(ot_summary.pdim == k and ot_summary.cm),
                   f"pdim={ot_summary.pdim} k={k} codim={ot_summary.codim}")
            t_ot = [ot_table.t(r) for r in range(1, k + 1)]
            viol = [r for r, (dr, tr) in enumerate(zip(ghw, t_ot), 1) if tr is None or dr < tr + 1]
            pattern = ["+%d" % (dr - tr) if tr is not None else "?" for dr, tr in zip(ghw, t_ot)]
            record("conjecture", "reported",
                   (f"COUNTEREXAMPLE at r={viol}: " if viol else "holds: ")
                   + f"d_r={ghw} t_r(OT)={t_ot} d_r-t_r={pattern}")
            try:
                mc = bt.multiplicity_conjecture_check(ot_summary)
                record("mult_conj", "reported", mc.describe())
            except OTCodesError as e:
                record("mult_conj", "skipped", f"{type(e).__name__}: {e}")

    return VerificationReport(
        name=name if name is not None else code.name,
        field=p,
        order=_order_labels(order),
        jmax=jmax,
        seed=seed,
        params={"n": n, "k": k, "d": d, "ghw": ghw, "degenerate": params.degenerate},
        circuits=[[i + 1 for i in c.support] for c in cs],
        components=[[i + 1 for i in b] for b in comps.blocks],
        loops=[z + 1 for z in zero_cols],
        ot=ot_block,
        sr=sr_block,
        checks=[results[c] for c in CHECK_NAMES],
    )


REPORT_SCHEMA = {
    "type": "object",
    "required": ["params", "circuits", "ot", "sr", "checks"],
    "properties": {
        "name": {"type": ["string", "null"]},
        "field": {"type": "integer"},
        "order": {"type": "array", "items": {"type": "integer"}},
        "params": {
            "type": "object",
            "required": ["n", "k", "d", "ghw"],
            "properties": {"n": {"type": "integer"}, "k": {"type": "integer"}, "d": {"type": "integer"},
                           "ghw": {"type": "array", "items": {"type": "integer"}}},
        },
        "circuits": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "ot": {
            "type": ["object", "null"],
            "required": ["alpha", "betti"],
            "properties": {
                "alpha": {"type": "integer"},
                "betti": {"type": "array", "items": {"type": "array", "items": {"type": "integer"},
                                                     "minItems": 3, "maxItems": 3}},
            },
        },
        "sr": {"type": "object", "required": ["betti"]},
        "checks": {
            "type": "array",
            "minItems": len(CHECK_NAMES),
            "maxItems": len(CHECK_NAMES),
            "items": {
                "type": "object",
                "required": ["name", "status", "details"],
                "properties": {"name": {"enum": list(CHECK_NAMES)},
                               "status": {"enum": ["pass", "fail", "reported", "skipped"]},
                               "details": {"type": "string"}},
            },
        },
    },
}
