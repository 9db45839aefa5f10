"""Command line interface for turanlab."""
import argparse
import hashlib
import io
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence, TextIO

from .config import Settings, load_settings
from .const import (
    DEFAULT_MAX_CYCLE,
    DOMAIN,
    EXIT_CHECK_FAILED,
    EXIT_INTERNAL,
    EXIT_INVALID_INPUT,
    EXIT_OK,
    EXIT_RESOURCE_LIMIT,
    EXIT_USAGE,
    FAMILY_NAMES,
    OUTPUT_BOTTLE,
    OUTPUT_FAIL,
    OUTPUT_FREE,
    OUTPUT_HUMAN,
    OUTPUT_NONE,
    OUTPUT_OK,
    OUTPUT_ORIENTABLE,
    OUTPUT_RECORDS,
    VERSION,
)
from .constructions import (
    complete_3graph,
    complete_tripartite,
    e_n_edge_count,
    iterated_blowup,
    k4_minus,
    tight_cycle,
    tight_cycle_minus_one,
)
from .core import Hypergraph3, as_fraction, from_canonical_form
from .errors import (
    IndeterminateError,
    InternalInconsistencyError,
    InvalidArgumentError,
    NotOrientableError,
    ResourceLimitError,
    UnsupportedSizeError,
)
from .formats import (
    format_record,
    read_hypergraph,
    read_points,
    read_tournament,
    write_hypergraph,
    write_points,
    write_tournament,
)
from .orientation import find_bottle, orient, verify_bottle, verify_orientation
from .plane import TriangleShape, equilateral_cm_free_check, lattice_patch, rainbow_check, similarity_hypergraph
from .search import (
    ForbiddenFamily,
    cleaning_delta,
    cleaning_threshold,
    codegree_cleaning_steps,
    exact_turan,
    local_search,
    stability_partition,
)
from .tournament import cyclic_triangle_count, d5, kendall_smith_bound, t5_family
from .walks import embed_cm_in_blowup, is_fcm_free, minimal_blowup_factor

_LOGGER = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
SHAPE_EQUILATERAL = "equilateral"
SUBCOMMANDS = (
    "gen",
    "orient",
    "find-bottle",
    "check-free",
    "turan",
    "clean",
    "stability",
    "tournaments",
    "embed",
    "tri-hypergraph",
    "lattice",
    "verify",
    "improve",
)

_handler: Optional[logging.Handler] = None


@dataclass
class RunManifest:
    """Everything that determines a run's output."""
    subcommand: str
    params: Dict[str, Any] = field(default_factory=dict)
    input_digests: Dict[str, str] = field(default_factory=dict)
    version: str = VERSION
    seed: Optional[int] = None

    def as_record(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {"record": "manifest", "subcommand": self.subcommand, "version": self.version}
        record["seed"] = "none" if self.seed is None else self.seed
        for key in sorted(self.params):
            record[f"param.{key}"] = self.params[key]
        for path in sorted(self.input_digests):
            record[f"sha256.{path}"] = self.input_digests[path]
        return record


class Output:
    """Writes either human text or key=value records."""

    def __init__(self, mode: str, stream: TextIO):
        self.mode = mode
        self.stream = stream

    @property
    def records(self) -> bool:
        return self.mode == OUTPUT_RECORDS

    def emit(self, human: Optional[str], record: Optional[Dict[str, Any]] = None) -> None:
        """Print human text or the record, whichever the mode asks for."""
        if self.records:
            if record is not None:
                self.stream.write(format_record(record) + "\n")
        elif human is not None:
            self.stream.write(human if human.endswith("\n") else human + "\n")


class _Inputs:
    """Reads input files and remembers their digests."""

    def __init__(self) -> None:
        self.digests: Dict[str, str] = {}

    def text(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as err:
            raise InvalidArgumentError(f"cannot read {path}: {err.strerror}") from err
        self.digests[path] = hashlib.sha256(data).hexdigest()
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as err:
            raise InvalidArgumentError(f"{path} is not UTF-8 text") from err

    def hypergraph(self, path: str) -> Hypergraph3:
        return read_hypergraph(self.text(path))


def _write_output(args: argparse.Namespace, out: Output, text: str) -> None:
    """Send a file body to --output when given, else to standard output in human mode."""
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        out.emit(text)


def _cmd_gen(args, out: Output, inputs: _Inputs, settings: Settings) -> int:
    if args.kind == "en":
        if args.n is None:
            raise InvalidArgumentError("gen en needs --n")
        if args.count_only:
            count = e_n_edge_count(args.n)
            out.emit(str(count), {"record": "count", "n": args.n, "edges": count})
            return EXIT_OK
        hypergraph = iterated_blowup(args.n, settings)
    elif args.kind in ("cycle", "cycle-minus"):
        if args.l is None:
            raise InvalidArgumentError(f"gen {args.kind} needs --l")
        hypergraph = tight_cycle(args.l) if args.kind == "cycle" else tight_cycle_minus_one(args.l)
    elif args.kind == "k4-minus":
        hypergraph = k4_minus()
    elif args.kind == "complete":
        if args.n is None:
            raise InvalidArgumentError("gen complete needs --n")
        hypergraph = complete_3graph(args.n)
    else:
        if not args.parts or len(args.parts) != 3:
            raise InvalidArgumentError("gen tripartite needs --parts with three sizes")
        hypergraph = complete_tripartite(*args.parts)

    if args.count_only:
        out.emit(str(len(hypergraph)), {"record": "count", "edges": len(hypergraph)})
        return EXIT_OK
    out.emit(None, {"record": "hypergraph", "n": hypergraph.vertex_count, "edges": len(hypergraph)})
    _write_output(args, out, write_hypergraph(hypergraph))
    return EXIT_OK


def _cmd_orient(args, out: Output, inputs: _Inputs, settings: Settings) -> int:
    outcome = orient(inputs.hypergraph(args.file))
    if outcome.orientable:
        out.emit(OUTPUT_ORIENTABLE, {"record": "orient", "result": OUTPUT_ORIENTABLE})
        _write_output(args, out, write_tournament(outcome.witness))
        out.emit(None, {"record": "tournament", "arcs": [f"{u}>{v}" for u, v in outcome.witness.arcs()]})
    else:
        sequence = " ".join(str(v) for v in outcome.certificate.sequence)
        out.emit(f"{OUTPUT_BOTTLE}\n{sequence}", {
            "record": "orient",
            "result": OUTPUT_BOTTLE,
            "sequence": list(outcome.certificate.sequence),
        })
    return EXIT_OK


def _cmd_find_bottle(args, out: Output, inputs: _Inputs, settings: Settings) -> int:
    certificate = find_bottle(inputs.hypergraph(args.file), args.max_size)
    if certificate is None:
        out.emit(OUTPUT_NONE, {"record": "bottle", "result": OUTPUT_NONE})
    else:
        sequence = " ".join(str(v) for v in certificate.sequence)
        out.emit(f"{OUTPUT_BOTTLE}\n{sequence}", {
            "record": "bottle",
            "result": OUTPUT_BOTTLE,
            "size": certificate.size,
            "sequence": list(certificate.sequence),
        })
    return EXIT_OK


def _cmd_check_free(args, out: Output, inputs: _Inputs, settings: Settings) -> int:
    report = is_fcm_free(inputs.hypergraph(args.file), args.max_cycle)
    if report.free:
        out.emit(OUTPUT_FREE, {"record": "check-free", "result": OUTPUT_FREE, "max_cycle": args.max_cycle})
    else:
        vertices = report.witness.vertices
        out.emit(f"ℓ={len(vertices)}: " + " ".join(str(v) for v in vertices), {
            "record": "check-free",
            "result": "witness",
            "length": len(vertices),
            "sequence": list(vertices),
        })
    return EXIT_OK


def _family(args) -> ForbiddenFamily:
    return ForbiddenFamily.from_name(args.family, args.l)


def _cmd_turan(args, out: Output, inputs: _Inputs, settings: Settings) -> int:
    family = _family(args)
    result = exact_turan(
        args.n, family, jobs=args.jobs, collect_examples=not args.no_examples, settings=settings
    )
    out.emit(
        f"ex({result.n}, {family.label}) = {result.max_edges}\n"
        f"extremal examples: {len(result.extremal_examples)}\n"
        f"nodes explored: {result.nodes_explored}",
        {
            "record": "turan",
            "n": result.n,
            "family": family.label,
            "max_edges": result.max_edges,
            "examples": len(result.extremal_examples),
            "nodes": result.nodes_explored,
        },
    )
    directory = Path(args.examples_dir) if args.examples_dir else None
    if directory is not None:
        directory.mkdir(parents=True, exist_ok=True)
    for index, form in enumerate(result.extremal_examples):
        out.emit(None, {"record": "example", "index": index, "canonical": form.hex()})
        if directory is not None:
            (directory / f"example_{index}.txt").write_text(write_hypergraph(from_canonical_form(form)))
    return EXIT_OK


def _cmd_clean(args, out: Output, inputs: _Inputs, settings: Settings) -> int:
    hypergraph = inputs.hypergraph(args.file)
    if args.threshold is not None:
        threshold = args.threshold
    elif args.delta is not None:
        threshold = cleaning_threshold(args.delta, hypergraph.vertex_count)
    elif args.l is not None:
        threshold = cleaning_threshold(cleaning_delta(args.l), hypergraph.vertex_count)
    else:
        raise InvalidArgumentError("clean needs --threshold, --delta or --l")

    removed = set()
    for step in codegree_cleaning_steps(hypergraph, threshold):
        removed.update(step.removed)
        out.emit(None, {"record": "step", "pair": list(step.pair), "removed": len(step.removed)})
    cleaned = hypergraph.without_edges(removed)
    out.emit(None, {"record": "clean", "threshold": threshold, "removed": len(removed), "edges": len(cleaned)})
    _LOGGER.info("Cleaning at threshold %d removed %d edges", threshold, len(removed))
    _write_output(args, out, write_hypergraph(cleaned))
    return EXIT_OK


def _cmd_stability(args, out: Output, inputs: _Inputs, settings: Settings) -> int:
    partition, report, diagnostics = stability_partition(inputs.hypergraph(args.file))
    sizes = partition.sizes
    out.emit(
        f"parts: {sizes[0]} {sizes[1]} {sizes[2]}\nbad edges: {len(report.bad)}",
        {
            "record": "stability",
            "sizes": list(sizes),
            "bad": len(report.bad),
            "v0": diagnostics["v0"],
            "crossing": len(report.crossing),
            "missing_crossing": len(report.missing_crossing),
        },
    )
    if args.verbose:
        for index, part in enumerate(partition.parts, start=1):
            out.emit(f"V{index}: " + " ".join(str(v) for v in sorted(part)))
    return EXIT_OK


def _cmd_tournaments(args, out: Output, inputs: _Inputs, settings: Settings) -> int:
    if args.kind == "d5":
        out.emit(None, {"record": "tournament", "name": "d5", "arcs": [f"{u}>{v}" for u, v in d5().arcs()]})
        _write_output(args, out, write_tournament(d5()))
    elif args.kind == "t5":
        family = t5_family()
        out.emit(str(len(family)), {"record": "t5", "size": len(family)})
        if args.verbose:
            for member in family:
                out.emit(str(member.encode()))
    else:
        if not args.file:
            raise InvalidArgumentError("tournaments count needs a tournament file")
        tournament = read_tournament(inputs.text(args.file))
        count = cyclic_triangle_count(tournament)
        bound = kendall_smith_bound(tournament.vertex_count)
        out.emit(f"cyclic triangles: {count}\nkendall-smith bound: {bound}", {
            "record": "cyclic-triangles",
            "n": tournament.vertex_count,
            "count": count,
            "bound": bound,
        })
    return EXIT_OK


def _cmd_embed(args, out: Output, inputs: _Inputs, settings: Settings) -> int:
    case, needed = minimal_blowup_factor(args.outer, args.inner)
    witness = embed_cm_in_blowup(args.outer, args.inner, args.t, settings)
    t = args.t or needed
    out.emit(
        f"case {case}, t={t}\n" + " ".join(str(v) for v in witness.vertices),
        {"record": "embed", "case": case, "t": t, "sequence": list(witness.vertices)},
    )
    return EXIT_OK


def _shape(text: str) -> TriangleShape:
    if text == SHAPE_EQUILATERAL:
        return TriangleShape.equilateral()
    parts = text.split(",")
    if len(parts) != 3:
        raise InvalidArgumentError(f"shape must be '{SHAPE_EQUILATERAL}' or three angles a,b,c, got {text!r}")
    return TriangleShape(tuple(as_fraction(part.strip()) for part in parts))


def _cmd_tri_hypergraph(args, out: Output, inputs: _Inputs, settings: Settings) -> int:
    points = read_points(inputs.text(args.file))
    hypergraph = similarity_hypergraph(points, _shape(args.shape), as_fraction(args.eps), settings)
    out.emit(None, {"record": "hypergraph", "n": hypergraph.vertex_count, "edges": len(hypergraph)})
    _write_output(args, out, write_hypergraph(hypergraph))
    return EXIT_OK


def _cmd_lattice(args, out: Output, inputs: _Inputs, settings: Settings) -> int:
    patch = lattice_patch(args.radius)
    if args.rainbow:
        ok = rainbow_check(patch)
        out.emit(OUTPUT_OK if ok else OUTPUT_FAIL, {"record": "rainbow", "radius": args.radius, "ok": ok})
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    if args.check_free is not None:
        free = equilateral_cm_free_check(patch, args.check_free, settings=settings)
        out.emit(OUTPUT_FREE if free else OUTPUT_FAIL, {
            "record": "lattice-free",
            "radius": args.radius,
            "max_cycle": args.check_free,
            "free": free,
        })
        return EXIT_OK if free else EXIT_CHECK_FAILED
    out.emit(None, {"record": "lattice", "radius": args.radius, "points": len(patch)})
    _write_output(args, out, write_points([member.point for member in patch]))
    return EXIT_OK


def _cmd_verify(args, out: Output, inputs: _Inputs, settings: Settings) -> int:
    hypergraph = inputs.hypergraph(args.file)
    if args.kind == "bottle":
        try:
            sequence = [int(item) for item in args.items]
        except ValueError as err:
            raise InvalidArgumentError(f"bottle vertices must be integers: {args.items}") from err
        ok = verify_bottle(hypergraph, sequence)
    else:
        if len(args.items) != 1:
            raise InvalidArgumentError("verify orientation needs exactly one tournament file")
        ok = verify_orientation(hypergraph, read_tournament(inputs.text(str(args.items[0]))))
    out.emit(OUTPUT_OK if ok else OUTPUT_FAIL, {"record": "verify", "kind": args.kind, "ok": ok})
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_improve(args, out: Output, inputs: _Inputs, settings: Settings) -> int:
    seed = inputs.hypergraph(args.file)
    improved = local_search(seed, _family(args), args.steps, args.seed, settings)
    out.emit(None, {"record": "improve", "before": len(seed), "after": len(improved)})
    _write_output(args, out, write_hypergraph(improved))
    return EXIT_OK


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[OUTPUT_HUMAN, OUTPUT_RECORDS], default=OUTPUT_HUMAN)
    common.add_argument("--jobs", type=int, default=None, help="worker processes for the exact search")
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    common.add_argument("--manifest", default=None, help="write the run manifest to this file")
    common.add_argument("--output", "-o", default=None, help="write the produced file here")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per operation."""
    common = _common_parser()
    parser = argparse.ArgumentParser(prog=DOMAIN, description="Tight-cycle Turán toolkit")
    parser.add_argument("--version", action="version", version=f"{DOMAIN} {VERSION}")
    sub = parser.add_subparsers(dest="subcommand")

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        command = sub.add_parser(name, parents=[common], help=help_text)
        command.set_defaults(handler=handler)
        return command

    gen = add("gen", _cmd_gen, "generate a standard hypergraph")
    gen.add_argument("kind", choices=["en", "cycle", "cycle-minus", "k4-minus", "complete", "tripartite"])
    gen.add_argument("--n", type=int)
    gen.add_argument("--l", type=int)
    gen.add_argument("--parts", type=int, nargs=3)
    gen.add_argument("--count-only", action="store_true")

    add("orient", _cmd_orient, "orient a hypergraph or produce a bottle").add_argument("file")

    bottle = add("find-bottle", _cmd_find_bottle, "shortest bottle")
    bottle.add_argument("file")
    bottle.add_argument("--max-size", type=int, default=None)

    check = add("check-free", _cmd_check_free, "test freeness of pseudo-cycles minus one edge")
    check.add_argument("file")
    check.add_argument("--max-cycle", type=int, default=DEFAULT_MAX_CYCLE)

    turan = add("turan", _cmd_turan, "exact Turán number")
    turan.add_argument("--n", type=int, required=True)
    turan.add_argument("--family", choices=FAMILY_NAMES, required=True)
    turan.add_argument("--l", type=int, default=DEFAULT_MAX_CYCLE)
    turan.add_argument("--no-examples", action="store_true")
    turan.add_argument("--examples-dir", default=None)

    clean = add("clean", _cmd_clean, "codegree cleaning")
    clean.add_argument("file")
    threshold = clean.add_mutually_exclusive_group()
    threshold.add_argument("--threshold", type=int)
    threshold.add_argument("--delta", type=str)
    clean.add_argument("--l", type=int, default=None, help="derive delta from L when no threshold is given")

    add("stability", _cmd_stability, "stability partition").add_argument("file")

    tournaments = add("tournaments", _cmd_tournaments, "tournament utilities")
    tournaments.add_argument("kind", choices=["d5", "t5", "count"])
    tournaments.add_argument("file", nargs="?")

    embed = add("embed", _cmd_embed, "embed a cycle minus one edge into a blow-up")
    embed.add_argument("--outer", type=int, required=True)
    embed.add_argument("--inner", type=int, required=True)
    embed.add_argument("--t", type=int, default=None)

    tri = add("tri-hypergraph", _cmd_tri_hypergraph, "triangle-similarity hypergraph of a point set")
    tri.add_argument("file")
    tri.add_argument("--shape", default=SHAPE_EQUILATERAL)
    tri.add_argument("--eps", default="0")

    lattice = add("lattice", _cmd_lattice, "triangular lattice patch")
    lattice.add_argument("--radius", type=int, required=True)
    lattice.add_argument("--rainbow", action="store_true")
    lattice.add_argument("--check-free", type=int, default=None, metavar="L")

    verify = add("verify", _cmd_verify, "check a certificate")
    verify.add_argument("kind", choices=["bottle", "orientation"])
    verify.add_argument("file")
    verify.add_argument("items", nargs="+")

    improve = add("improve", _cmd_improve, "local search from a seed hypergraph")
    improve.add_argument("file")
    improve.add_argument("--family", choices=FAMILY_NAMES, required=True)
    improve.add_argument("--l", type=int, default=DEFAULT_MAX_CYCLE)
    improve.add_argument("--steps", type=int, required=True)
    improve.add_argument("--seed", type=int, required=True)

    return parser


def _configure_logging(verbose: bool) -> None:
    global _handler
    logger = logging.getLogger(DOMAIN)
    if _handler is not None:
        logger.removeHandler(_handler)
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(_handler)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)


def _manifest(args: argparse.Namespace, inputs: _Inputs) -> RunManifest:
    skipped = {"handler", "subcommand", "format", "verbose", "manifest", "output", "jobs", "seed"}
    params = {key: value for key, value in sorted(vars(args).items()) if key not in skipped}
    return RunManifest(args.subcommand, params, dict(inputs.digests), VERSION, getattr(args, "seed", None))


def _emit_manifest(args: argparse.Namespace, manifest: RunManifest, out: Output) -> None:
    line = format_record(manifest.as_record())
    _LOGGER.info("Run manifest: %s", line)
    sys.stderr.write(line + "\n")
    if out.records:
        out.stream.write(line + "\n")
    if args.manifest:
        Path(args.manifest).write_text(
            "".join(f"{key}={value}\n" for key, value in manifest.as_record().items())
        )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if not argv or (argv[0] not in SUBCOMMANDS and not argv[0].startswith("-")):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID_INPUT
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    _configure_logging(args.verbose)
    out = Output(args.format, sys.stdout)
    inputs = _Inputs()
    try:
        settings = load_settings({"jobs": args.jobs})
        # inputs are read inside the handler; buffer its output until the manifest is known
        buffered = io.StringIO()
        status = args.handler(args, Output(args.format, buffered), inputs, settings)
        _emit_manifest(args, _manifest(args, inputs), out)
        out.stream.write(buffered.getvalue())
        return status
    except (InvalidArgumentError, UnsupportedSizeError, NotOrientableError, IndeterminateError) as err:
        _LOGGER.error("%s: %s", err.code, err)
        return EXIT_INVALID_INPUT
    except OSError as err:
        _LOGGER.error("%s: cannot write %s: %s", InvalidArgumentError.code, err.filename, err.strerror)
        return EXIT_INVALID_INPUT
    except ResourceLimitError as err:
        _LOGGER.error("%s: %s", err.code, err)
        return EXIT_RESOURCE_LIMIT
    except InternalInconsistencyError as err:
        _LOGGER.error("%s: %s", err.code, err)
        return EXIT_INTERNAL
