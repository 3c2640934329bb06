"""Command-line front end: run the commands of a ``.glc`` session.

Usage::

    glcoh SESSION.glc [COMMAND ARGS ...] [--json] [--window LO HI] [--nmax N]
                      [--seed S] [--field p|QQ] [--timing]

Commands given on the command line (separated by ``;``) replace the ones
listed in the file.  Names refer to bindings of the session; a ring name used
where a module is expected means the free module of rank one, ``k`` means the
residue field and ``m`` the maximal ideal when those names are not bound.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass
from importlib import resources

from . import __version__
from .glc import (INCONCLUSIVE, HypothesisError, default_window, generalized_canonical,
                  generalized_deficiency, glc_dual_side, glc_truncated_limit,
                  graded_cech_cohomology, parameter_elements, top_nonvanishing)
from .homology import canonical_module, deficiency, depth, ext, grade, ring_module, tor
from .lang import COMMANDS, Command, GlcError, parse_session, print_module, print_session
from .modules import INFINITE, FPModule, graded_piece_dim, hilbert_series, krull_dim
from .poly import FieldSpec
from .resolve import injective_dimension, projective_dimension, resolution
from . import verify

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad command arguments (reported with exit status 2)."""


@dataclass
class Options:
    json: bool = False
    window: tuple = None
    nmax: int = 6
    seed: int = 0
    field: FieldSpec = None
    timing: bool = False


def _enc(v):
    return "infinite" if v == INFINITE else v


# ---------------------------------------------------------------------------
# argument resolution


class _Args:
    """Typed access to the words of one command."""

    def __init__(self, session, command: Command):
        self.s = session
        self.c = command
        self.words = list(command.args)
        self.inputs = {}

    def need(self, k, usage):
        if len(self.words) < k:
            raise UsageError(f"{self.c.name}: expected {usage}")

    def integer(self, pos, label="index"):
        w = self.words[pos]
        try:
            v = int(w)
        except ValueError:
            raise UsageError(f"{self.c.name}: {label} must be an integer, got {w!r}") from None
        if label == "index" and v < 0:
            raise UsageError(f"{self.c.name}: index must be non-negative, got {v}")
        return v

    def _note(self, name, text):
        self.inputs[name] = text

    def ring_of(self, names):
        rings = set()
        for w in names:
            kind = self.s.kinds.get(w)
            if kind == "ring":
                rings.add(w)
            elif kind in ("module", "ideal"):
                rings.add(self.s.module_ring[w])
        if not rings:
            all_rings = [n for n in self.s.order if self.s.kinds[n] == "ring"]
            if len(all_rings) == 1:
                rings = {all_rings[0]}
        if len(rings) != 1:
            raise UsageError(f"{self.c.name}: cannot determine a single ring from {names}")
        return rings.pop()

    def module(self, pos, others=()):
        w = self.words[pos]
        kind = self.s.kinds.get(w)
        if kind == "module":
            M = self.s[w]
            self._note(w, f"module {w} = {print_module(M, self.s.module_ring[w])}")
            return M
        if kind == "ring":
            self._note(w, f"ring {w} (free of rank one)")
            return ring_module(self.s[w])
        if kind is None and w == "k":
            rname = self.ring_of([o for o in others if o != "k"])
            self._note(w, f"residue field of {rname}")
            return FPModule.residue_field(self.s[rname])
        raise UsageError(f"{self.c.name}: {w!r} is not a module or ring name")

    def ideal(self, pos, others=()):
        """Generators of an ideal argument: an ideal name, ``m``, or a module (its annihilator)."""
        w = self.words[pos]
        kind = self.s.kinds.get(w)
        if kind == "ideal":
            decl = self.s[w]
            self._note(w, f"ideal {w} = (" + ", ".join(map(str, decl.gens)) + ")")
            return self.s[decl.ring], list(decl.gens)
        if kind == "module":
            from .modules import annihilator
            M = self.s[w]
            self._note(w, f"annihilator of module {w}")
            return M.ring, list(annihilator(M).generators)
        if kind is None and w == "m":
            rname = self.ring_of([o for o in others if o != "m"])
            self._note(w, f"maximal ideal of {rname}")
            R = self.s[rname]
            return R, list(R.S.gens)
        raise UsageError(f"{self.c.name}: {w!r} is not an ideal name")

    def ring_name_of(self, M):
        for name in self.s.order:
            if self.s.kinds[name] == "ring" and self.s[name] == M.ring:
                return name
        return "R"


def _same_ring(cmd, *mods):
    if any(M.ring != mods[0].ring for M in mods):
        raise UsageError(f"{cmd}: arguments live over different rings")


def module_summary(M: FPModule, ring_name: str) -> dict:
    return {"zero": M.is_zero(), "hilbert_series": str(hilbert_series(M)),
            "generator_degrees": list(M.degrees),
            "presentation": print_module(M, ring_name)}


def _module_text(M: FPModule, ring_name: str) -> str:
    if M.is_zero():
        return "0"
    return f"{hilbert_series(M)}    {print_module(M, ring_name)}"


def _window_values(window, values) -> dict:
    lo, hi = window
    return {"window": [lo, hi], "values": [_enc(values[j]) for j in range(lo, hi + 1)]}


def _window_text(window, values) -> str:
    lo, hi = window
    return "  ".join(f"{j}:{values[j]}" for j in range(lo, hi + 1))


# ---------------------------------------------------------------------------
# commands


def _scalar(fn):
    """Command taking one module (or ring) and returning a number."""
    def run(a: _Args, opts):
        a.need(1, "one module or ring name")
        M = a.module(0)
        v = fn(M)
        return _enc(v), {}, str(_enc(v))
    return run


def cmd_pd(a: _Args, opts):
    a.need(1, "one module name")
    M = a.module(0)
    v = projective_dimension(M)
    res = resolution(M, M.ring.n + 2)
    w = {"betti_totals": res.betti.totals(), "resolution_finished": res.finished,
         "hilbert_certificate": res.hilbert_certificate()}
    return _enc(v), w, str(_enc(v))


def cmd_grade(a: _Args, opts):
    a.need(2, "an ideal and a module")
    R, gens = a.ideal(0, a.words[1:2])
    M = a.module(1, a.words[0:1])
    if R != M.ring:
        raise UsageError("grade: ideal and module live over different rings")
    v = grade(gens, M)
    return _enc(v), {}, str(_enc(v))


def _two_module_op(fn, label):
    def run(a: _Args, opts):
        a.need(3, f"{label} i M N")
        i = a.integer(0)
        M = a.module(1, a.words[2:3])
        N = a.module(2, a.words[1:2])
        _same_ring(label, M, N)
        E = fn(i, M, N)
        rn = a.ring_name_of(E if E.rank else M)
        return module_summary(E, rn), {}, _module_text(E, rn)
    return run


def cmd_deficiency(a: _Args, opts):
    a.need(2, "deficiency i M")
    i = a.integer(0)
    M = a.module(1)
    K = deficiency(i, M)
    rn = a.ring_name_of(M)
    return module_summary(K, rn), {}, _module_text(K, rn)


def cmd_canonical(a: _Args, opts):
    a.need(1, "canonical M")
    M = a.module(0)
    K = canonical_module(M)
    rn = a.ring_name_of(M)
    return module_summary(K, rn), {"dim": krull_dim(M)}, _module_text(K, rn)


def cmd_gen_canonical(a: _Args, opts):
    a.need(2, "gen-canonical N M")
    N = a.module(0, a.words[1:2])
    M = a.module(1, a.words[0:1])
    _same_ring("gen-canonical", M, N)
    s, K = generalized_canonical(N, M)
    rn = a.ring_name_of(M)
    return ({"s": s, "module": module_summary(K, rn)}, {"grade": M.ring.krull_dim - s},
            f"s = {s}    {_module_text(K, rn)}")


def cmd_gen_deficiency(a: _Args, opts):
    a.need(3, "gen-deficiency i N M")
    i = a.integer(0)
    N = a.module(1, a.words[2:3])
    M = a.module(2, a.words[1:2])
    _same_ring("gen-deficiency", M, N)
    K = generalized_deficiency(i, N, M)
    rn = a.ring_name_of(M)
    return module_summary(K, rn), {}, _module_text(K, rn)


def _window(opts, M, N):
    return tuple(opts.window) if opts.window else default_window(M, N)


def cmd_dual_side(a: _Args, opts):
    a.need(3, "dual-side i M N")
    i = a.integer(0)
    M = a.module(1, a.words[2:3])
    N = a.module(2, a.words[1:2])
    _same_ring("dual-side", M, N)
    D = glc_dual_side(i, M, N)
    window = _window(opts, M, N)
    vals = {j: D.piece_dim(j) for j in range(window[0], window[1] + 1)}
    rn = a.ring_name_of(M)
    result = {"module": module_summary(D.module, rn), "local_cohomology": _window_values(window, vals)}
    text = f"route {D.route}: {_module_text(D.module, rn)}\nH^{i}_m: {_window_text(window, vals)}"
    return result, {"route": D.route}, text


def cmd_cech(a: _Args, opts):
    a.need(3, "cech i M N [IDEAL]")
    i = a.integer(0)
    M = a.module(1, a.words[2:3])
    N = a.module(2, a.words[1:2])
    _same_ring("cech", M, N)
    if len(a.words) > 3:
        R, elems = a.ideal(3, a.words[1:3])
        if R != M.ring:
            raise UsageError("cech: ideal lives over a different ring")
    else:
        elems = parameter_elements(M.ring, opts.seed)
    window = _window(opts, M, N)
    res = graded_cech_cohomology(i, elems, M, N, window)
    status = "ok" if res.conclusive else INCONCLUSIVE
    w = {"elements": [str(f) for f in elems],
         "levels": [res.levels.get(j) for j in range(window[0], window[1] + 1)]}
    return _window_values(window, res.values), w, _window_text(window, res.values), status


def cmd_limit(a: _Args, opts):
    a.need(4, "limit i IDEAL M N")
    i = a.integer(0)
    M = a.module(2, a.words[3:4])
    N = a.module(3, a.words[2:3])
    _same_ring("limit", M, N)
    R, gens = a.ideal(1, a.words[2:4])
    if R != M.ring:
        raise UsageError("limit: ideal lives over a different ring")
    window = _window(opts, M, N)
    L = glc_truncated_limit(i, gens, M, N, opts.nmax, window)
    stages = [[L.stage_dims(n)[j] for j in range(window[0], window[1] + 1)]
              for n in range(1, opts.nmax + 1)]
    result = dict(_window_values(window, L.limit_hilbert), stabilized=L.stabilized)
    status = "ok" if L.stabilized else INCONCLUSIVE
    text = ("stabilized" if L.stabilized else "not stabilized") + ": " + \
        _window_text(window, L.limit_hilbert)
    return result, {"stage_dims": stages, "n_max": opts.nmax}, text, status


def cmd_top(a: _Args, opts):
    a.need(2, "top M N")
    M = a.module(0, a.words[1:2])
    N = a.module(1, a.words[0:1])
    _same_ring("top", M, N)
    v = top_nonvanishing(M, N)
    return v, {"dim_R": M.ring.krull_dim}, str(v)


def _kv(words):
    params, rest = {}, []
    for w in words:
        if "=" in w:
            k, _, v = w.partition("=")
            try:
                params[k] = int(v)
            except ValueError:
                raise UsageError(f"parameter {w!r} must have an integer value") from None
        else:
            rest.append(w)
    return params, rest


def _report_text(rep) -> str:
    line = f"{rep.theorem_id:<10} {rep.instance:<24} {rep.status}"
    if rep.detail:
        line += f"  ({rep.detail})"
    return line


def cmd_check(a: _Args, opts):
    params, words = _kv(a.words)
    a.words = words
    a.need(3, "check THEOREM_ID M N [IDEAL] [key=value ...]")
    tid = words[0]
    if tid not in verify.CHECKERS:
        raise UsageError(f"check: unknown theorem id {tid!r} "
                         f"(known: {', '.join(verify.THEOREM_IDS)})")
    M = a.module(1, words[2:3])
    N = a.module(2, words[1:2])
    _same_ring("check", M, N)
    ideal = None
    if len(words) > 3:
        R, ideal = a.ideal(3, words[1:3])
        if R != M.ring:
            raise UsageError("check: ideal lives over a different ring")
    params.setdefault("n_max", opts.nmax)
    inst = verify.Instance("session", M.ring, M, N, ideal, "session", params,
                           tuple(opts.window) if opts.window else None)
    rep = verify.check(tid, inst, opts.seed)
    result = {"theorem_id": tid, "status": rep.status, "proxy": rep.proxy, "detail": rep.detail}
    text = rep.status + (f"  ({rep.detail})" if rep.detail else "")
    return result, rep.witnesses, text, rep.status


def cmd_suite(a: _Args, opts):
    """suite [builtin|FAMILY] [count=K nvars=V maxdeg=D] [THEOREM_ID ...]"""
    params, words = _kv(a.words)
    source = "builtin"
    if words and (words[0] == "builtin" or words[0] in verify.FAMILIES):
        source = words.pop(0)
    ids = words or list(verify.THEOREM_IDS)
    unknown = [t for t in ids if t not in verify.CHECKERS]
    if unknown:
        raise UsageError(f"suite: unknown theorem ids {unknown}")
    if source == "builtin":
        insts = verify.builtin_instances(opts.field)
    else:
        try:
            insts = verify.gen_instances(source, params, opts.seed, opts.field)
        except ValueError as exc:
            raise UsageError(f"suite: {exc}") from None
    if opts.window:
        for inst in insts:
            inst.window = tuple(opts.window)
    reps = verify.run_suite(ids, insts, opts.seed)
    counts = {s: sum(r.status == s for r in reps) for s in verify.STATUSES}
    result = {"source": source, "ids": ids, "counts": counts,
              "reports": [r.as_dict() for r in reps]}
    status = verify.FAILED if verify.suite_failed(reps) else "ok"
    text = "\n".join([_report_text(r) for r in reps] +
                     ["totals: " + ", ".join(f"{k} {v}" for k, v in counts.items())])
    return result, {"instances": [i.describe() for i in insts]}, text, status


COMMAND_TABLE = {
    "dim": _scalar(krull_dim),
    "depth": _scalar(depth),
    "pd": cmd_pd,
    "id": _scalar(injective_dimension),
    "grade": cmd_grade,
    "ext": _two_module_op(ext, "ext"),
    "tor": _two_module_op(tor, "tor"),
    "deficiency": cmd_deficiency,
    "canonical": cmd_canonical,
    "gen-canonical": cmd_gen_canonical,
    "gen-deficiency": cmd_gen_deficiency,
    "dual-side": cmd_dual_side,
    "cech": cmd_cech,
    "limit": cmd_limit,
    "top": cmd_top,
    "check": cmd_check,
    "suite": cmd_suite,
}
assert set(COMMAND_TABLE) == set(COMMANDS)


def run_command(session, command: Command, opts: Options = None) -> dict:
    """Execute one command; return the report dictionary (text under ``"text"``).

    Raises UsageError for malformed arguments.  A violated precondition of the
    underlying construction gives status ``hypothesis-not-met``.
    """
    opts = opts or Options()
    a = _Args(session, command)
    t0 = time.perf_counter()
    try:
        out = COMMAND_TABLE[command.name](a, opts)
    except HypothesisError as err:
        out = (None, {}, f"{verify.NOT_MET}: {err}", verify.NOT_MET)
    except ValueError as err:
        raise UsageError(f"{command.name}: {err}") from None
    elapsed = time.perf_counter() - t0
    result, witnesses, text = out[:3]
    status = out[3] if len(out) > 3 else "ok"
    inputs = dict(sorted(a.inputs.items()))
    inputs["options"] = {"window": list(opts.window) if opts.window else None,
                         "nmax": opts.nmax, "seed": opts.seed}
    return {"command": command.text(), "inputs": inputs, "result": result,
            "witnesses": witnesses, "status": status,
            "runtime_ms": round(elapsed * 1000, 3) if opts.timing else None,
            "version": __version__, "text": text}


def report_json(report: dict) -> str:
    """Canonical serialization: sorted keys, fixed separators, no text field."""
    body = {k: v for k, v in report.items() if k != "text"}
    return json.dumps(body, sort_keys=True, ensure_ascii=False)


def load_schema() -> dict:
    return json.loads(resources.files("glcoh").joinpath("report.schema.json").read_text())


def exit_status(reports) -> int:
    return EXIT_FAILED if any(r["status"] == verify.FAILED for r in reports) else EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def _field_arg(text: str) -> FieldSpec:
    t = text.strip()
    m = re.fullmatch(r"(?:GF\()?(\d+)\)?", t)
    try:
        if t == "QQ":
            return FieldSpec(0)
        if m:
            return FieldSpec(int(m.group(1)))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    raise argparse.ArgumentTypeError(f"field must be a prime p, GF(p) or QQ, got {text!r}")


def with_field(session, F: FieldSpec):
    """The same session with every ring redeclared over F."""
    name = "QQ" if F.p == 0 else f"GF({F.p})"
    text = re.sub(r"poly\((?:GF\(\d+\)|QQ),", f"poly({name},", print_session(session))
    return parse_session(text)


def split_commands(words):
    """Commands from command-line words; ``;`` separates consecutive commands."""
    out = []
    for chunk in " ".join(words).split(";"):
        c = chunk.split()
        if not c:
            continue
        if c[0] not in COMMANDS:
            raise UsageError(f"unknown command {c[0]!r} (known: {', '.join(COMMANDS)})")
        out.append(Command(c[0], c[1:]))
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="glcoh", description="Run the commands of a .glc session.")
    ap.add_argument("session", help="session file (.glc)")
    ap.add_argument("command", nargs=argparse.REMAINDER, help="command overriding the file's")
    return ap


def _split_flags(argv):
    """Separate the option flags from positional words so flags may appear anywhere."""
    fp = argparse.ArgumentParser(add_help=False)
    fp.add_argument("--json", action="store_true")
    fp.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"))
    fp.add_argument("--nmax", type=int, default=6)
    fp.add_argument("--seed", type=int, default=0)
    fp.add_argument("--field", type=_field_arg, default=None)
    fp.add_argument("--timing", action="store_true")
    return fp.parse_known_args(argv)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if any(a in ("-h", "--help") for a in argv):
        build_parser().print_help()
        print("\nflags: --json  --window LO HI  --nmax N  --seed S  --field p|QQ  --timing")
        print("commands: " + " ".join(COMMANDS))
        return EXIT_OK
    try:
        flags, rest = _split_flags(argv)
    except SystemExit:
        return EXIT_USAGE
    unknown = [w for w in rest if w.startswith("--")]
    if unknown or not rest:
        print("usage: glcoh SESSION.glc [COMMAND ...] [flags]", file=sys.stderr)
        return EXIT_USAGE
    if flags.nmax < 2:
        print("error: --nmax must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    if flags.window and flags.window[0] > flags.window[1]:
        print("error: --window LO HI needs LO <= HI", file=sys.stderr)
        return EXIT_USAGE
    opts = Options(flags.json, tuple(flags.window) if flags.window else None, flags.nmax,
                   flags.seed, flags.field, flags.timing)
    path, words = rest[0], rest[1:]
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        session = parse_session(text)
        if opts.field is not None:
            session = with_field(session, opts.field)
        commands = split_commands(words) if words else session.commands
    except GlcError as exc:
        loc = f"{exc.line}:{exc.col}:" if exc.line is not None else ""
        exp = f" (expected one of: {', '.join(exc.expected)})" if exc.expected else ""
        print(f"{path}:{loc} {exc.kind} error: {exc.message}{exp}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    reports = []
    for cmd in commands:
        try:
            rep = run_command(session, cmd, opts)
        except UsageError as exc:
            where = f"{path}:{cmd.line}:{cmd.col}: " if cmd.line else ""
            print(f"{where}error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        reports.append(rep)
        if opts.json:
            print(report_json(rep))
        else:
            print(f"{cmd.text()}: {rep['text']}" if "\n" not in rep["text"]
                  else f"{cmd.text()}:\n{rep['text']}")
        sys.stdout.flush()
    return exit_status(reports)


if __name__ == "__main__":
    sys.exit(main())
