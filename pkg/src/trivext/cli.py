"""Command line entry point: ``trivext <command> [options]``.

Exit codes: 0 success, 1 a verdict-level failure (golden diff or failed cross-check),
2 bad input, 3 some verdict stayed undetermined within the caps.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from . import report as rp
from .algebra import FDAlgebra
from .bimodule import Bimodule
from .classify import (QUIVERS, ClassificationRun, classify_asid_bimodules, enumerate_thick_subcats_dynkin,
                       match_a2, negative_search, quiver_algebra, t_fingerprint, verify_a2, verify_a3)
from .engine import AsidReport, Caps, asid_verdict, enumerate_ind_cm, k0_rank_report, stable_hom_table
from .graded import QuasiVeronese
from .linalg import Field
from .specfile import AlgebraSpec, SpecError, SpecFile, format_algebra, format_bimodule, parse_spec

EXIT_OK, EXIT_DIFF, EXIT_INPUT, EXIT_UNDETERMINED = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class Context:
    args: argparse.Namespace
    field: Field
    caps: Caps
    started: float

    def timings(self, **marks: float) -> dict:
        if not self.args.timings:
            return {}
        out = {k: f"{round(v * 1000)}ms" for k, v in marks.items()}
        out["total"] = f"{round((time.perf_counter() - self.started) * 1000)}ms"
        return out


@dataclass
class Loaded:
    text: str
    spec: SpecFile
    algebras: dict[str, FDAlgebra]
    over: str | None = None
    bimodule: Bimodule | None = None


def _load(ctx: Context, need_bimodule: bool = True) -> Loaded:
    path = ctx.args.spec
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    spec = parse_spec(text)
    if not spec.algebras:
        raise SpecError("no algebra block")
    try:
        algebras = {name: a.build(ctx.field) for name, a in spec.algebras.items()}
    except ValueError as e:
        raise SpecError(str(e)) from None
    out = Loaded(text, spec, algebras)
    if need_bimodule:
        out.over, out.bimodule = spec.bimodule(ctx.args.bimodule, algebras)
    return out


def _digest(ctx: Context, *texts: str) -> str:
    a = ctx.args
    return rp.input_digest(a.command, *texts)


def _verdict(ctx: Context, loaded: Loaded, with_sources: bool = True) -> AsidReport:
    return asid_verdict(loaded.algebras[loaded.over], loaded.bimodule, ctx.caps, with_sources=with_sources)


def _status(*reports: AsidReport) -> int:
    return EXIT_UNDETERMINED if any(r.verdict == "undetermined" for r in reports) else EXIT_OK


# commands ------------------------------------------------------------------------------------

def cmd_check_ig(ctx: Context) -> tuple[dict, int]:
    loaded = _load(ctx)
    t = time.perf_counter()
    rep = _verdict(ctx, loaded, with_sources=False)
    doc = rp.asid_document(rep, digest=_digest(ctx, loaded.text), field=ctx.field.name, seed=ctx.args.seed,
                           timings=ctx.timings(verdict=time.perf_counter() - t))
    return doc, _status(rep)


def cmd_asid(ctx: Context) -> tuple[dict, int]:
    loaded = _load(ctx)
    t = time.perf_counter()
    rep = _verdict(ctx, loaded)
    extra = {}
    if rep.is_asid and rep.dynkin is None:
        extra["T_fingerprint"] = list(t_fingerprint(rep))
    doc = rp.asid_document(rep, digest=_digest(ctx, loaded.text), field=ctx.field.name, seed=ctx.args.seed,
                           timings=ctx.timings(verdict=time.perf_counter() - t), extra=extra)
    code = _status(rep)
    if rep.is_asid and not rep.sources_agree:
        code = EXIT_DIFF
    return doc, code


def _cm(ctx: Context, loaded: Loaded):
    rep = _verdict(ctx, loaded, with_sources=False)
    if not rep.is_asid:
        return rep, None
    return rep, enumerate_ind_cm(rep.trivial_extension, ctx.caps)


def cmd_cm_list(ctx: Context) -> tuple[dict, int]:
    loaded = _load(ctx)
    t = time.perf_counter()
    rep, cm = _cm(ctx, loaded)
    doc = rp.asid_document(rep, digest=_digest(ctx, loaded.text), field=ctx.field.name, seed=ctx.args.seed, cm=cm,
                           timings=ctx.timings(cm=time.perf_counter() - t))
    code = _status(rep)
    if cm is not None and cm.finite_cm_type is None:
        code = EXIT_UNDETERMINED
    return doc, code


def cmd_stable_hom(ctx: Context) -> tuple[dict, int]:
    loaded = _load(ctx)
    t = time.perf_counter()
    rep, cm = _cm(ctx, loaded)
    rows = [] if cm is None else stable_hom_table(rep, cm, shifts=range(-ctx.args.shifts, ctx.args.shifts + 1))
    table = [{"source": r.source, "target": r.target, "shift": r.shift, "direct": r.direct, "via_tau": r.via_tau}
             for r in rows]
    doc = rp.asid_document(rep, digest=_digest(ctx, loaded.text, str(ctx.args.shifts)), field=ctx.field.name,
                           seed=ctx.args.seed, cm=cm, timings=ctx.timings(stable_hom=time.perf_counter() - t),
                           extra={"stable_hom": table, "stable_hom_agrees": all(r.agrees for r in rows)})
    if not all(r.agrees for r in rows):
        return doc, EXIT_DIFF
    return doc, _status(rep)


def cmd_k0(ctx: Context) -> tuple[dict, int]:
    loaded = _load(ctx)
    t = time.perf_counter()
    rep, cm = _cm(ctx, loaded)
    if not rep.is_asid:
        raise InputError(f"bimodule is not asid (verdict {rep.verdict})")
    try:
        k0 = k0_rank_report(rep, cm)
    except ValueError as e:
        raise InputError(str(e)) from None
    doc = rp.asid_document(rep, digest=_digest(ctx, loaded.text), field=ctx.field.name, seed=ctx.args.seed, cm=cm,
                           k0=k0, timings=ctx.timings(k0=time.perf_counter() - t))
    if not k0.holds or k0.orbits_agree is False:
        return doc, EXIT_DIFF
    return doc, _status(rep)


def cmd_quasi_veronese(ctx: Context) -> tuple[dict, int]:
    loaded = _load(ctx, need_bimodule=False)
    spec = loaded.spec.algebra(ctx.args.algebra)
    G = loaded.algebras[spec.name]
    if not spec.degrees:
        raise InputError(f"algebra {spec.name!r} has no degrees block")
    t = time.perf_counter()
    try:
        qv = QuasiVeronese(G, ctx.args.ell)
    except ValueError as e:
        raise InputError(str(e)) from None
    B, D = qv.beilinson()
    body = {
        "ell": ctx.args.ell,
        "algebra": {"name": G.name, "dim": G.dim, "degree_dims": _degree_dims(G)},
        "quasi_veronese": {"dim": qv.algebra.dim, "vertices": list(qv.algebra.vertices),
                           "degree_dims": _degree_dims(qv.algebra)},
        "nabla": {"dim": B.dim, "cartan": B.cartan()},
        "delta": {"dim": D.dim, "grid": [list(r) for r in D.grid]},
    }
    doc = rp.envelope(digest=_digest(ctx, loaded.text, str(ctx.args.ell)), field=ctx.field.name,
                      seed=ctx.args.seed, caps=ctx.caps, verdict=None,
                      timings=ctx.timings(build=time.perf_counter() - t), **body)
    return doc, EXIT_OK


def _degree_dims(alg: FDAlgebra) -> dict[str, int]:
    out: dict[int, int] = {}
    for d in alg.degrees or [0] * alg.dim:
        out[d] = out.get(d, 0) + 1
    return {str(d): n for d, n in sorted(out.items())}


def cmd_classify(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    run = ClassificationRun(quiver=a.quiver, field=ctx.field.name if ctx.field.is_finite else "F2", cap=a.cap,
                            seed=a.seed, jobs=a.jobs, caps=ctx.caps)
    res = classify_asid_bimodules(run)
    vlam = quiver_algebra(a.quiver, Field.from_name(run.verify_field))
    alg_spec = AlgebraSpec.from_presentation(a.quiver, QUIVERS[a.quiver]())
    findings = []
    for f in res.asid():
        c = f.candidate.to_bimodule(vlam)
        findings.append({
            "index": f.index,
            "grid": f.candidate.describe(),
            "verdict": f.verdict,
            "alpha": {"r": f.alpha_r, "ell": f.alpha_ell, "sources": dict(sorted(f.alpha_sources.items()))},
            "T": list(f.fingerprint),
            "ker_varpi": list(f.ker_varpi),
            "spec": format_bimodule(c, f"#{f.index}", a.quiver),
        })
    groups = {" + ".join(k) or "0": [f.index for f in v] for k, v in sorted(res.groups().items())}
    body = {
        "quiver": a.quiver,
        "cap": a.cap,
        "candidates": res.candidates,
        "asid": findings,
        "groups": groups,
        "undetermined": res.undetermined,
        "algebra_spec": format_algebra(alg_spec),
    }
    lam = quiver_algebra(a.quiver, Field.from_name(run.verify_field))
    try:
        body["thick_subcategories"] = enumerate_thick_subcats_dynkin(lam)
    except ValueError:
        pass
    code = EXIT_UNDETERMINED if res.undetermined else EXIT_OK
    if a.quiver == "a2" and a.cap == 1:
        gold = match_a2(res)
        body["golden"] = {"table": gold.table, "checked": gold.checked, "diffs": [str(d) for d in gold.diffs]}
        if not gold.ok:
            code = EXIT_DIFF
    doc = rp.envelope(digest=_digest(ctx, a.quiver, str(a.cap)), field=run.field, seed=a.seed, caps=ctx.caps,
                      verdict=f"{len(findings)} asid", timings=ctx.timings(classify=res.seconds), **body)
    return doc, code


def cmd_verify_table(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    t = time.perf_counter()
    if a.table == "a2":
        gold = verify_a2(ctx.caps, ctx.field)
        body = {"checked": gold.checked, "diffs": [str(d) for d in gold.diffs]}
        ok = gold.ok
    elif a.table == "a3":
        gold = verify_a3(tuple(a.n), ctx.caps, ctx.field)
        rows = [{"key": r.key, "n": r.n, "verdict": r.verdict, "alpha": r.alpha,
                 "sources": dict(sorted(r.alpha_sources.items())), "T": list(r.t_part)}
                for r in gold.details["rows"]]
        body = {"checked": gold.checked, "diffs": [str(d) for d in gold.diffs], "rows": rows,
                "families": gold.details["families"]}
        ok = gold.ok
    else:
        field = ctx.field.name if ctx.field.is_finite else "F2"
        neg = negative_search(cap=a.cap, field=field, caps=ctx.caps)
        body = {"candidates": neg.candidates, "prefiltered": neg.prefiltered, "hits": neg.hits,
                "rejected": neg.rejected,
                "statement": neg.statement(),
                "examined": [{"index": i, "verdict": v, "reason": r} for i, v, r in neg.examined]}
        ok = neg.ok
    doc = rp.envelope(digest=_digest(ctx, a.table, repr(a.n), str(a.cap)), field=ctx.field.name, seed=a.seed,
                      caps=ctx.caps, verdict="ok" if ok else "diff",
                      timings=ctx.timings(verify=time.perf_counter() - t),
                      table=a.table, **body)
    return doc, EXIT_OK if ok else EXIT_DIFF


COMMANDS = {
    "check-ig": cmd_check_ig,
    "asid": cmd_asid,
    "cm-list": cmd_cm_list,
    "stable-hom": cmd_stable_hom,
    "quasi-veronese": cmd_quasi_veronese,
    "classify": cmd_classify,
    "verify-table": cmd_verify_table,
    "k0": cmd_k0,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="Q or a prime field such as F2, F3")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap-a", type=int, default=None, help="largest power of C tried for the asid number")
    common.add_argument("--cap-res", type=int, default=10, help="resolution length cap")
    common.add_argument("--dim-cap", type=int, default=8, help="largest CM module dimension searched")
    common.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--timings", action="store_true", help="record wall-clock timings (breaks byte equality)")

    p = argparse.ArgumentParser(prog="trivext", description="Asid bimodules and trivial extension algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_spec(name: str, help: str) -> argparse.ArgumentParser:
        s = sub.add_parser(name, parents=[common], help=help)
        s.add_argument("--spec", required=True, help="quiver spec file (.alg)")
        s.add_argument("--bimodule", default=None, help="bimodule name when the file declares several")
        return s

    with_spec("check-ig", "decide whether the trivial extension is Iwanaga-Gorenstein")
    with_spec("asid", "full asid report: asid number from every source, T and Ker")
    with_spec("cm-list", "indecomposable CM modules over the trivial extension")
    s = with_spec("stable-hom", "stable Hom table between CM modules, two ways")
    s.add_argument("--shifts", type=int, default=1, help="grading shifts in [-N, N]")
    with_spec("k0", "rank of K0 of the graded stable CM category")
    s = sub.add_parser("quasi-veronese", parents=[common], help="Beilinson algebra and quasi-Veronese data")
    s.add_argument("--spec", required=True)
    s.add_argument("--algebra", default=None)
    s.add_argument("--ell", type=int, required=True)
    s = sub.add_parser("classify", parents=[common], help="enumerate bimodules and keep the asid ones")
    s.add_argument("--quiver", choices=sorted(QUIVERS), required=True)
    s.add_argument("--cap", type=int, default=1, help="largest dimension of one grid cell")
    s = sub.add_parser("verify-table", parents=[common], help="re-verify a reference table")
    s.add_argument("--table", choices=("a2", "a3", "negative"), required=True)
    s.add_argument("--n", type=int, nargs="+", default=[1, 2], help="family parameters for the a3 table")
    s.add_argument("--cap", type=int, default=1, help="cell cap for the negative search")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        try:
            field = Field.from_name(args.field)
        except ValueError as e:
            raise InputError(str(e)) from None
        caps = Caps(cap_a=args.cap_a, cap_res=args.cap_res, dim_cap=args.dim_cap, seed=args.seed)
        ctx = Context(args, field, caps, time.perf_counter())
        doc, code = COMMANDS[args.command](ctx)
    except (SpecError, InputError) as e:
        print(f"trivext: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    text = rp.dumps(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
