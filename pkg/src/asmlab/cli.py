"""Command-line surface wiring the library into one pipeline.

Subcommands follow the modeling ladder: ``simulate`` produces reads,
``scs`` runs the superstring solvers, ``assemble`` runs the graph-based
assemblers (maximal unitigs or the shortest edge-covering walk), ``eval``
scores contigs against a truth genome, and ``stage`` drives a whole
simulate -> assemble -> evaluate run from a config file.

Exit codes: 0 success, 1 domain error (bad graph shape, solver caps,
unparseable data files), 2 usage error (bad flags or parameter values).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from asmlab import graph as dbg
from asmlab import simulate
from asmlab.errors import AssemblyError
from asmlab.evaluate import StageResult, assemble_contigs, evaluate, run_stage
from asmlab.formats import (
    FastaRecord,
    parse_gaps,
    read_config,
    read_fasta,
    read_reads,
    write_fasta,
)
from asmlab.sequence import DnaString
from asmlab.superstring import diagnose_overcollapse, exact_scs, greedy_scs
from asmlab.unitig import Contig, ContigSet, maximal_unitigs

ARTIFACT_DIR_ENV = "ASMLAB_ARTIFACTS"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asmlab",
        description=(
            "Genome-assembly modeling lab: read simulation, superstring and "
            "graph-walk assemblers, safe contigs via unitigs, and a staged "
            "evaluation harness."
        ),
    )
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    parser.add_argument("--threads", type=int, default=1,
                        help="reserved; all solvers currently run single-threaded")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser(
        "simulate",
        help="sample reads from a genome (idealized or uniform with errors/gaps)",
    )
    src = sim.add_mutually_exclusive_group(required=True)
    src.add_argument("--genome", help="FASTA whose first record is the genome")
    src.add_argument("--random-length", type=int,
                     help="synthesize a uniform random genome of this length")
    sim.add_argument("--plant-repeat", metavar="LEN,COPIES",
                     help="plant an exact repeat in the random genome")
    sim.add_argument("--reads", required=True, help="output reads FASTA")
    sim.add_argument("--genome-out", help="also write the genome FASTA here")
    sim.add_argument("--num", type=int, help="number of reads (uniform mode)")
    sim.add_argument("--len", dest="read_length", type=int, required=True,
                     help="read length in nt")
    sim.add_argument("--error-rate", type=float, default=0.0,
                     help="per-base substitution probability")
    sim.add_argument("--gap", action="append", default=[], metavar="START:END",
                     help="exclude this genome interval from sampling (repeatable)")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--idealized", action="store_true",
                     help="one exact read per position; ignores --num/--error-rate/--gap")

    scs = sub.add_parser(
        "scs",
        help="shortest-common-superstring solvers (greedy heuristic or exact search)",
    )
    scs.add_argument("--reads", required=True)
    mode = scs.add_mutually_exclusive_group(required=True)
    mode.add_argument("--greedy", action="store_true")
    mode.add_argument("--exact", action="store_true")
    scs.add_argument("--out", required=True, help="output superstring FASTA")
    scs.add_argument("--read-len", type=int,
                     help="print the repeat/over-collapse diagnostic for this read length")

    asm = sub.add_parser(
        "assemble",
        help="graph assemblers: maximal unitigs (safe contigs) or the "
             "shortest edge-covering walk per component",
    )
    asm.add_argument("--reads", required=True)
    asm.add_argument("-k", type=int, required=True, help="graph order (k-mer length)")
    asm.add_argument("--method", choices=["unitig", "cpp-walk"], required=True)
    asm.add_argument("--out", required=True, help="output contigs FASTA")
    asm.add_argument("--correct", type=int, metavar="MINMULT",
                     help="pre-correct reads at this minimum k-mer multiplicity")
    asm.add_argument("--dot", help="also dump the graph as DOT")

    graph_cmd = sub.add_parser(
        "dbg",
        help="de Bruijn graph utilities: build an edge-list fixture, test a "
             "string against the graph, solve a covering walk, or render DOT",
    )
    gsub = graph_cmd.add_subparsers(dest="dbg_command", required=True)
    gbuild = gsub.add_parser("build", help="build a graph and write its edge-list fixture")
    gbuild.add_argument("--reads", required=True)
    gbuild.add_argument("-k", type=int, required=True)
    gbuild.add_argument("--out", required=True, help="edge-list fixture path")
    gwalk = gsub.add_parser(
        "walk",
        help="find the walk spelling a string (or the first missing k-mer), "
             "or solve the shortest edge-covering walk",
    )
    gwalk.add_argument("--graph", required=True, help="edge-list fixture")
    what = gwalk.add_mutually_exclusive_group(required=True)
    what.add_argument("--text", help="string to locate as a walk")
    what.add_argument("--shortest", action="store_true",
                      help="solve the shortest edge-covering walk")
    gwalk.add_argument("--out", help="write the walk's spelled string as FASTA")
    gdot = gsub.add_parser("dot", help="render an edge-list fixture as DOT")
    gdot.add_argument("--graph", required=True)
    gdot.add_argument("--out", required=True)
    gdot.add_argument("--unitigs", action="store_true",
                      help="color vertices by maximal unitig")

    ev = sub.add_parser("eval", help="score contigs against a truth genome")
    ev.add_argument("--contigs", required=True)
    ev.add_argument("--truth", required=True)
    ev.add_argument("-k", type=int, required=True)
    ev.add_argument("--report", required=True,
                    help="report path (text; a .json twin is written alongside)")

    st = sub.add_parser(
        "stage",
        help="run one evaluation stage (1 idealized, 2 degraded, 3 real reads) from a config",
    )
    st.add_argument("--stage", type=int, choices=[1, 2, 3], required=True)
    st.add_argument("--config", required=True)
    st.add_argument("--out-dir", help=f"artifact directory (default ${ARTIFACT_DIR_ENV} or cwd)")

    return parser


def _load_genome_arg(args) -> DnaString:
    if args.genome:
        if args.plant_repeat:
            raise ValueError("--plant-repeat only applies to --random-length genomes")
        records = read_fasta(args.genome)
        if not records:
            raise ValueError(f"no FASTA records in {args.genome}")
        return records[0].sequence
    planted = None
    if args.plant_repeat:
        length, _, copies = args.plant_repeat.partition(",")
        if not _:
            raise ValueError("--plant-repeat expects LEN,COPIES")
        planted = (int(length), int(copies))
    if args.random_length is None or args.random_length < 1:
        raise ValueError("--random-length must be a positive integer")
    return simulate.random_genome(args.random_length, planted, seed=args.seed)


def _cmd_simulate(args) -> int:
    if args.read_length is None or args.read_length < 1:
        raise ValueError("--len must be a positive integer")
    genome = _load_genome_arg(args)
    if args.idealized:
        reads = simulate.idealized_reads(genome, args.read_length)
    else:
        if args.num is None:
            raise ValueError("--num is required unless --idealized is given")
        profile = simulate.SimulationProfile(
            genome_length=len(genome),
            num_reads=args.num,
            read_length=args.read_length,
            error_rate=args.error_rate,
            gap_intervals=parse_gaps(" ".join(args.gap)) if args.gap else (),
            seed=args.seed,
        )
        reads = simulate.uniform_reads(genome, profile)
    write_fasta([FastaRecord(f"r{i}", r) for i, r in enumerate(reads)], args.reads)
    if args.genome_out:
        write_fasta([FastaRecord("truth", genome)], args.genome_out)
    print(f"wrote {len(reads)} reads to {args.reads}")
    return 0


def _cmd_scs(args) -> int:
    reads = read_reads(args.reads)
    result = exact_scs(reads) if args.exact else greedy_scs(reads)
    write_fasta(
        [FastaRecord("s0", result.superstring,
                     description=f"method={result.method} length={len(result.superstring)}")],
        args.out,
    )
    trace_path = Path(args.out).with_suffix(Path(args.out).suffix + ".trace")
    lines = [f"method = {result.method}", f"length = {len(result.superstring)}"]
    for step in result.merge_order:
        lines.append(f"read {step.read_index}\t{step.side}\toverlap={step.overlap}")
    trace_path.write_text("\n".join(lines) + "\n", encoding="ascii")
    print(f"superstring length {len(result.superstring)} -> {args.out}")
    if args.read_len:
        report = diagnose_overcollapse(result, args.read_len)
        print(report.describe())
    return 0


def _cmd_assemble(args) -> int:
    if args.k < 2:
        raise ValueError(f"-k must be >= 2, got {args.k}")
    reads = read_reads(args.reads)
    if args.correct is not None:
        if args.correct < 1:
            raise ValueError("--correct MINMULT must be >= 1")
        reads = simulate.correct_reads(reads, args.k, args.correct)
    contigs, graph = assemble_contigs(reads, args.k, args.method)
    write_fasta(
        [FastaRecord(c.name, c.sequence, description=_provenance(c)) for c in contigs],
        args.out,
    )
    if args.dot:
        highlight = maximal_unitigs(graph).unitigs if args.method == "unitig" else None
        Path(args.dot).write_text(dbg.export_dot(graph, highlight), encoding="ascii")
    print(f"wrote {len(contigs)} contig(s) to {args.out}")
    return 0


def _provenance(contig: Contig) -> str:
    if contig.vertex_path:
        return f"{contig.source} path={'>'.join(contig.vertex_path)}"
    return contig.source


def _cmd_dbg(args) -> int:
    from asmlab.formats import read_edge_list, write_edge_list

    if args.dbg_command == "build":
        if args.k < 2:
            raise ValueError(f"-k must be >= 2, got {args.k}")
        graph = dbg.build(read_reads(args.reads), args.k)
        write_edge_list(graph, args.out)
        print(f"wrote {graph.num_edges} edges / {len(graph.vertices)} vertices "
              f"to {args.out}")
        return 0
    graph = read_edge_list(args.graph)
    if args.dbg_command == "dot":
        highlight = maximal_unitigs(graph) if args.unitigs else None
        Path(args.out).write_text(dbg.export_dot(graph, highlight), encoding="ascii")
        print(f"wrote DOT to {args.out}")
        return 0
    # walk
    if args.shortest:
        walk = dbg.shortest_edge_covering_walk(graph)
        spelled = dbg.spell(walk)
        print(f"shortest edge-covering walk: {len(walk.edges)} edges, "
              f"spells {spelled}")
    else:
        walk = dbg.walk_of(args.text, graph)
        if walk is None:
            kmer, pos = dbg.first_missing_kmer(args.text, graph)
            print(f"not spelled by any walk: k-mer {kmer} at position {pos} "
                  "is not an edge")
            return 1
        spelled = args.text
        print(f"spelled by a unique walk of {len(walk.edges)} edges")
    if args.out:
        write_fasta([FastaRecord("walk", DnaString(spelled))], args.out)
    return 0


def _cmd_eval(args) -> int:
    if args.k < 1:
        raise ValueError(f"-k must be >= 1, got {args.k}")
    contig_records = read_fasta(args.contigs)
    truth_records = read_fasta(args.truth)
    if not truth_records:
        raise ValueError(f"no FASTA records in {args.truth}")
    contigs = ContigSet(
        args.k,
        tuple(Contig(r.id, r.sequence, source="file") for r in contig_records),
    )
    report = evaluate(contigs, truth_records[0].sequence, args.k)
    Path(args.report).write_text(report.to_text(), encoding="ascii")
    json_path = Path(args.report).with_suffix(Path(args.report).suffix + ".json")
    json_path.write_text(report.to_json(), encoding="ascii")
    print(report.to_text(), end="")
    return 0


def _cmd_stage(args) -> int:
    config = read_config(args.config)
    if args.out_dir:
        out_dir = args.out_dir
    elif config.out_dir:
        out_dir = config.out_dir
    elif os.environ.get(ARTIFACT_DIR_ENV):
        out_dir = str(Path(os.environ[ARTIFACT_DIR_ENV]) / f"stage{args.stage}")
    else:
        out_dir = None  # run_stage falls back to ./asmlab-stage<N>
    result: StageResult = run_stage(args.stage, config, out_dir=out_dir)
    print(f"artifacts in {result.artifact_dir}")
    print(result.report.to_text(), end="")
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "scs": _cmd_scs,
    "assemble": _cmd_assemble,
    "dbg": _cmd_dbg,
    "eval": _cmd_eval,
    "stage": _cmd_stage,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssemblyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
