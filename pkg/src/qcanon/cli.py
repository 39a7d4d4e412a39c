"""Command-line interface for the basis, crystal, and semigroup tools.

Commands: basis, verify, crystal, cone, center, adapted; each accepts the
shared flags --type/--rank/--word/--height/--cache-dir/--format/--jobs.
Exit codes: 0 clean, 1 a verification reported violations, 2 usage or
execution error.  Output bytes are a function of the configuration and
the engine version only; the result cache changes speed, never bytes.
"""

import argparse
import json
import sys

from .adapted import (SemigroupCone, VerificationReport, adapted_spec,
                      b2_cone_table, b2_decomposition_check, bz_verify,
                      central_parameters, cone, in_center_parameters,
                      in_complement_parameters, intersection_semigroup,
                      minor_line_report, qcenter_decompose, qcenter_tests,
                      verify_adapted)
from .cache import ResultCache, engine_version
from .canonical import weight_slice
from .cartan import build_cartan, is_quiver_adapted, reduced_words_w0
from .crystal import crystal_graph_dot, crystal_graph_edges, string_param
from .freealg import WordElement, all_words_of_weight, drinfeld_pair, \
    serre_element
from .highest_weight import simple_module
from .pbw import PBWFrame
from .scalar import RationalScalar


def _parse_vector(text, name):
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError("%s must be a comma-separated integer vector, "
                         "got %r" % (name, text))


class RunConfig:
    """Validated options for one command invocation."""

    def __init__(self, args):
        label = args.type
        if getattr(args, "rank", None) is not None:
            if label is None:
                raise ValueError("--rank needs --type")
            if not label[-1].isdigit():
                label = "%s%d" % (label, args.rank)
            elif label != "%s%d" % (label.rstrip("0123456789"), args.rank):
                raise ValueError("--rank contradicts --type %s" % label)
        if label is None:
            raise ValueError("--type is required")
        self.type_label = label
        self.cartan = build_cartan(label)
        self.word = getattr(args, "word", None)
        self.height = getattr(args, "height", None)
        if self.height is not None and self.height < 1:
            raise ValueError("height cap must be positive")
        self.fmt = getattr(args, "format", "json")
        self.cache_dir = getattr(args, "cache_dir", None)
        self.jobs = getattr(args, "jobs", 1) or 1
        self.args = args

    def frame(self, word=None):
        w = word or self.word
        if w is None:
            w = default_word(self.cartan)
        return PBWFrame(self.cartan, w)


def default_word(cartan):
    """The lex-first quiver-compatible reduced word of the longest
    element (every type used here has one)."""
    words = reduced_words_w0(cartan)
    for w in words:
        if is_quiver_adapted(cartan, w):
            return w
    return words[0]


def _emit(text):
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _emit_json(doc):
    _emit(json.dumps(doc, indent=2, sort_keys=True))


def _emit_report(rep, schema="report.v1"):
    doc = {"schema": schema}
    doc.update(rep.to_json())
    _emit_json(doc)
    return 0 if rep.passed else 1


# ---------------------------------------------------------------------------
# basis
# ---------------------------------------------------------------------------

def _weights_up_to_height(frame, cap):
    out = []
    n = frame.cartan.n

    def rec(pos, rem, acc):
        if pos == n:
            wt = tuple(acc)
            if any(wt) and frame.indices_of_weight(wt):
                out.append(wt)
            return
        for k in range(rem + 1):
            rec(pos + 1, rem - k, acc + [k])

    rec(0, cap, [])
    return sorted((w for w in out if frame.cartan.height(w) <= cap),
                  key=lambda w: (frame.cartan.height(w), w))


def _slice_payload(frame, weight, kind):
    sl = weight_slice(frame, weight)
    elements = []
    for m in sl.indices:
        if kind == "canonical":
            x = sl.canonical_element(m)
            coords = [[list(n), str(c.as_laurent())]
                      for n, c in sorted(x.terms.items())]
        else:
            x = sl.dual_canonical_element(m)
            coords = []
            for n, c in sorted(x.terms.items()):
                d = c / RationalScalar.from_laurent(frame.dual_scalar(n))
                try:
                    text = str(d.as_laurent())
                except ValueError:
                    text = str(d)
                coords.append([list(n), text])
        elements.append({"index": list(m), "coordinates": coords})
    return {"weight": list(weight),
            "indices": [list(m) for m in sl.indices],
            "elements": elements}


def cmd_basis(cfg):
    frame = cfg.frame()
    kind = cfg.args.kind
    if cfg.args.weight is not None:
        weights = [_parse_vector(cfg.args.weight, "--weight")]
    elif cfg.height is not None:
        weights = _weights_up_to_height(frame, cfg.height)
    else:
        raise ValueError("basis needs --weight or --height")
    cache = ResultCache(cfg.cache_dir)
    slices = []
    for wt in weights:
        key = {"artifact": "slice", "type": cfg.type_label,
               "word": frame.word, "kind": kind, "weight": list(wt)}
        payload = cache.get(key)
        if payload is None:
            payload = _slice_payload(frame, wt, kind)
            cache.put(key, payload)
        slices.append(payload)
    doc = {"schema": "slices.v1", "engine": engine_version(),
           "type": cfg.type_label, "word": frame.word, "kind": kind,
           "slices": slices}
    if cfg.fmt == "tsv":
        lines = []
        for sl in slices:
            wt = ",".join(map(str, sl["weight"]))
            for el in sl["elements"]:
                idx = ",".join(map(str, el["index"]))
                for n, text in el["coordinates"]:
                    lines.append("%s\t%s\t%s\t%s"
                                 % (wt, idx, ",".join(map(str, n)), text))
        _emit("\n".join(lines))
    else:
        _emit_json(doc)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

_B2_EXPECTED_LISTS = {
    "own": [[0, 1, 0, 0], [0, 1, 0, 1], [1, 0, 0, 0], [1, 0, 1, 0]],
    "other": [[0, 0, 0, 1], [0, 1, 0, 1], [1, 0, 0, 1], [1, 0, 1, 0]],
    "sigma_own": [[0, 1, 0, 1], [1, 0, 0, 0], [1, 0, 1, 0], [2, 0, 0, 1]],
    "sigma_other": [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]],
    "extra": [[0, 0, 1, 0], [0, 1, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0]],
    "sigma_extra": [[0, 1, 0, 1], [1, 0, 0, 1], [1, 0, 1, 0], [2, 0, 0, 1]],
}


def _suite_example2(cfg):
    frame = PBWFrame(build_cartan("B2"), "2121")
    entries_cap = cfg.args.entries
    height = cfg.height if cfg.height is not None else 6
    rep = b2_decomposition_check(frame, entries_cap=entries_cap,
                                 product_height_cap=height)
    rep.scope["suite"] = "example2"
    table = b2_cone_table(frame)
    mismatched = []
    for name, sg in sorted(table.items()):
        got = [list(g) for g in sg.generators]
        rep.notes.setdefault("generators", {})[name] = got
        if got != _B2_EXPECTED_LISTS[name]:
            mismatched.append(name)
    rep.violations["generator_lists"] = mismatched
    central = intersection_semigroup(frame, ["2121", "1212"], height)
    rep.notes["central_cone"] = [list(g) for g in central.generators]
    rep.violations["central_cone"] = \
        [] if set(central.generators) == {(1, 0, 1, 0), (0, 1, 0, 1)} \
        else [list(g) for g in central.generators]
    return rep


def _suite_serre(cfg):
    rep = VerificationReport({"type": cfg.type_label,
                              "suite": "serre-pairing"})
    import time as _time
    t0 = _time.time()
    c = cfg.cartan
    bad = []
    pairs = 0
    for i in range(1, c.n + 1):
        for j in range(1, c.n + 1):
            if i == j or c.A[i - 1][j - 1] == 0:
                continue
            s = serre_element(c, i, j)
            for w in all_words_of_weight(c, s.weight()):
                f = WordElement.from_word(c, w, side="F")
                pairs += 1
                if not drinfeld_pair(s, f).is_zero():
                    bad.append([i, j, w])
    rep.counts["pairs"] = pairs
    rep.violations["nonzero_pairings"] = bad
    rep.seconds = _time.time() - t0
    return rep


def cmd_verify(cfg):
    suite = cfg.args.suite
    height = cfg.height if cfg.height is not None else 6
    if suite == "bz":
        rep = bz_verify(cfg.frame(), height, jobs=cfg.jobs)
    elif suite == "qcenter":
        rep = qcenter_tests(cfg.frame(), height)
    elif suite == "adapted":
        frame = cfg.frame()
        gen_frame = cfg.frame(cfg.args.gen_word) \
            if cfg.args.gen_word else frame
        rep = verify_adapted(frame, cone(frame, gen_frame).generators,
                             height)
    elif suite == "example2":
        rep = _suite_example2(cfg)
    elif suite == "serre-pairing":
        rep = _suite_serre(cfg)
    elif suite == "minors":
        rep = minor_line_report(cfg.frame())
    else:
        raise ValueError("unknown suite %r" % suite)
    return _emit_report(rep)


# ---------------------------------------------------------------------------
# crystal
# ---------------------------------------------------------------------------

def cmd_crystal(cfg):
    what = cfg.args.what
    frame = cfg.frame()
    if what == "graph":
        if cfg.args.hw is None:
            raise ValueError("crystal graph needs --hw")
        hw = _parse_vector(cfg.args.hw, "--hw")
        mod = simple_module(cfg.cartan, hw)
        if cfg.fmt == "json":
            verts, edges = crystal_graph_edges(frame, mod)
            doc = {
                "schema": "crystal-graph.v1",
                "type": cfg.type_label, "word": frame.word,
                "highest_weight": list(hw),
                "vertices": [{"label": list(lbl),
                              "weight": list(v.weight)}
                             for lbl, v in sorted(verts.items())],
                "edges": sorted([list(src), i + 1, list(tgt)]
                                for src, i, tgt in edges),
            }
            _emit_json(doc)
        else:
            _emit(crystal_graph_dot(frame, mod))
        return 0
    if what == "string":
        if cfg.args.param is None:
            raise ValueError("crystal string needs --param")
        m = _parse_vector(cfg.args.param, "--param")
        if len(m) != frame.N or any(x < 0 for x in m):
            raise ValueError("--param must have %d nonnegative entries"
                             % frame.N)
        datum = string_param(frame, m)
        doc = {"schema": "crystal-string.v1", "type": cfg.type_label,
               "word": frame.word, "param": list(m),
               "string": datum.to_json()}
        _emit_json(doc)
        return 0
    raise ValueError("unknown crystal subcommand %r" % what)


# ---------------------------------------------------------------------------
# cone / center / adapted
# ---------------------------------------------------------------------------

def cmd_cone(cfg):
    frame = cfg.frame()
    gen_frame = cfg.frame(cfg.args.gen_word) if cfg.args.gen_word else frame
    sg = cone(frame, gen_frame)
    doc = {"schema": "cone.v1", "type": cfg.type_label,
           "param_word": frame.word, "gen_word": gen_frame.word,
           "generators": [list(g) for g in sg.generators]}
    if cfg.args.include_sigma:
        from .adapted import sigma_cone
        doc["sigma_generators"] = [
            list(g) for g in sigma_cone(frame, sg).generators]
    if cfg.fmt == "tsv":
        lines = ["\t".join(map(str, g)) for g in doc["generators"]]
        if cfg.args.include_sigma:
            lines.append("")
            lines.extend("\t".join(map(str, g))
                         for g in doc["sigma_generators"])
        _emit("\n".join(lines))
    else:
        _emit_json(doc)
    return 0


def cmd_center(cfg):
    frame = cfg.frame()
    cents = central_parameters(frame.word)
    doc = {"schema": "center.v1", "type": cfg.type_label,
           "word": frame.word,
           "central": [{"k": k, "parameter": list(p)}
                       for k, p in sorted(cents.items())]}
    if cfg.args.param is not None:
        m = _parse_vector(cfg.args.param, "--param")
        if len(m) != frame.N or any(x < 0 for x in m):
            raise ValueError("--param must have %d nonnegative entries"
                             % frame.N)
        z, h = qcenter_decompose(frame.word, m)
        doc["decomposition"] = {
            "input": list(m), "z": list(z), "h": list(h),
            "central": in_center_parameters(frame.word, m),
            "blockwise_zero": in_complement_parameters(frame.word, m)}
    if cfg.fmt == "tsv":
        lines = ["z%d\t%s" % (row["k"], ",".join(map(str,
                                                     row["parameter"])))
                 for row in doc["central"]]
        if "decomposition" in doc:
            d = doc["decomposition"]
            lines.append("z\t%s" % ",".join(map(str, d["z"])))
            lines.append("h\t%s" % ",".join(map(str, d["h"])))
        _emit("\n".join(lines))
    else:
        _emit_json(doc)
    return 0


def cmd_adapted(cfg):
    frame = cfg.frame()
    spec = adapted_spec(frame)
    height = cfg.height if cfg.height is not None else 6
    rep = verify_adapted(frame, spec.params, height)
    doc = {"schema": "adapted.v1", "type": cfg.type_label,
           "word": frame.word,
           "generators": [{"r": r, "parameter": list(m)}
                          for r, _x, m in spec.generators],
           "verify": rep.to_json()}
    _emit_json(doc)
    return 0 if rep.passed else 1


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def build_parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--type", help="Cartan type label, e.g. A2")
    shared.add_argument("--rank", type=int,
                        help="rank, combined with a bare --type letter")
    shared.add_argument("--word", help="reduced word of the longest "
                                       "element (digits)")
    shared.add_argument("--height", type=int,
                        help="height cap for scans and slice listings")
    shared.add_argument("--cache-dir", dest="cache_dir",
                        help="directory for the on-disk result cache")
    shared.add_argument("--format", choices=["json", "tsv", "dot"],
                        default="json", help="output format")
    shared.add_argument("--jobs", type=int, default=1,
                        help="worker processes for parallel scans")

    parser = argparse.ArgumentParser(
        prog="qcanon",
        description="Exact canonical/dual-canonical basis computations, "
                    "crystal graphs, and semigroup verifications.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[shared],
                       help="emit canonical or dual-canonical slices")
    p.add_argument("--kind", choices=["canonical", "dual"], default="dual")
    p.add_argument("--weight", help="single weight slice, alpha "
                                    "coordinates a,b,...")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", parents=[shared],
                       help="run a verification suite")
    p.add_argument("suite", choices=["bz", "qcenter", "adapted",
                                     "example2", "serre-pairing",
                                     "minors"])
    p.add_argument("--gen-word", dest="gen_word",
                   help="generating word for the adapted suite")
    p.add_argument("--entries", type=int, default=4,
                   help="entry cap for the example2 coverage scan")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("crystal", parents=[shared],
                       help="crystal graphs and string parameters")
    p.add_argument("what", choices=["graph", "string"])
    p.add_argument("--hw", help="highest weight, fundamental-weight "
                                "coordinates a,b,...")
    p.add_argument("--param", help="basis label in the word's "
                                   "parametrization")
    p.set_defaults(func=cmd_crystal)

    p = sub.add_parser("cone", parents=[shared],
                       help="parameter semigroup of a word's minors")
    p.add_argument("--gen-word", dest="gen_word",
                   help="word whose minors are parametrized "
                        "(default: --word itself)")
    p.add_argument("--include-sigma", action="store_true",
                   help="also emit the antiautomorphism image")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("center", parents=[shared],
                       help="central parameters and the z/h split")
    p.add_argument("--param", help="parameter to decompose")
    p.set_defaults(func=cmd_center)

    p = sub.add_parser("adapted", parents=[shared],
                       help="minors of a word plus their verification")
    p.set_defaults(func=cmd_adapted)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args)
        return args.func(cfg)
    except (ValueError, RuntimeError, OSError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
