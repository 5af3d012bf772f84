"""Command-line interface: ``gapping enhance | convert | evaluate | stats``."""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from .composite import enhance_sentence_composite
from .conllu import ConlluError, Document, parse_document, serialize_document
from .convert import enhanced_to_basic_orphan, enhanced_to_composite
from .embeddings import EmbeddingFormatError, SimilarityParams, load_table
from .evaluate import EvalInputError, corpus_stats, score_enhanced, score_remnant_attachment
from .orphan import EnhanceStats, enhance_sentence_orphan

DEFAULTS = SimilarityParams()


def _read(path: str) -> Document:
    if path == "-":
        return parse_document(sys.stdin.read())
    with open(path, encoding="utf-8") as f:
        return parse_document(f.read())


def _write(doc: Document, path: str) -> None:
    text = serialize_document(doc)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def _enhance_one(sent, method, table, params):
    stats = EnhanceStats()
    if method == "orphan":
        out = enhance_sentence_orphan(sent, table, params, stats)
    else:
        out = enhance_sentence_composite(sent, stats)
    return out, stats


def _map(func, items, jobs):
    if jobs <= 1 or len(items) < 2:
        return list(map(func, items))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * jobs))))


def cmd_enhance(args) -> int:
    params = SimilarityParams(
        pos_mismatch_penalty=args.pos_penalty,
        gap_penalty=args.gap_penalty,
        lowercase_fallback=not args.case_sensitive,
        literal_indicator=args.literal_indicator,
        pos_only=args.pos_only,
    )
    table = None
    if args.method == "orphan" and not args.pos_only:
        if not args.embeddings:
            print("error: --embeddings is required for --method orphan (or pass --pos-only)",
                  file=sys.stderr)
            return 1
        table = load_table(args.embeddings, lowercase_fallback=params.lowercase_fallback)
    doc = _read(args.input)
    work = partial(_enhance_one, method=args.method, table=table, params=params)
    results = _map(work, doc.sentences, args.jobs)
    total = EnhanceStats()
    for _, st in results:
        total.gaps_found += st.gaps_found
        total.gaps_resolved += st.gaps_resolved
        total.copies += st.copies
        total.messages.extend(st.messages)
    _write(Document([s for s, _ in results]), args.output)
    for msg in total.messages:
        print(msg, file=sys.stderr)
    print(f"gaps found: {total.gaps_found}  gaps resolved: {total.gaps_resolved}  "
          f"copies inserted: {total.copies}", file=sys.stderr)
    return 0


def cmd_convert(args) -> int:
    func = enhanced_to_composite if args.to == "composite" else enhanced_to_basic_orphan
    doc = _read(args.input)
    _write(Document([func(s) for s in doc]), args.output)
    return 0


def cmd_evaluate(args) -> int:
    system, gold = _read(args.system), _read(args.gold)
    if args.metric == "enhanced":
        report = score_enhanced(system, gold)
        table, kv = report.as_table(), report.as_keyvalue()
    else:
        uas, las = score_remnant_attachment(system, gold)
        table = f"{'UAS_g':>7}  {'LAS_g':>7}\n{uas:7.2f}  {las:7.2f}"
        kv = f"UAS_g={uas:.2f}\nLAS_g={las:.2f}"
    if args.format in ("table", "both"):
        print(table)
    if args.format in ("kv", "both"):
        print(kv)
    return 0


def cmd_stats(args) -> int:
    stats = corpus_stats(_read(args.input))
    if args.format in ("table", "both"):
        print(stats.as_table())
    if args.format in ("kv", "both"):
        print(stats.as_keyvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gapping", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enhance", help="reconstruct elided predicates as copy nodes in DEPS")
    p.add_argument("--method", choices=["orphan", "composite"], default="orphan")
    p.add_argument("--input", default="-")
    p.add_argument("--output", default="-")
    p.add_argument("--embeddings", help="GloVe/word2vec text vectors (optionally .gz)")
    p.add_argument("--pos-penalty", type=float, default=DEFAULTS.pos_mismatch_penalty,
                   help="score added for mismatching head POS tags (default: %(default)s)")
    p.add_argument("--gap-penalty", type=float, default=DEFAULTS.gap_penalty,
                   help="score per unaligned argument (default: %(default)s)")
    p.add_argument("--literal-indicator", action="store_true",
                   help="apply the POS penalty when tags are equal instead of when they differ")
    p.add_argument("--pos-only", action="store_true",
                   help="drop the embedding distance term; no embeddings needed")
    p.add_argument("--case-sensitive", action="store_true",
                   help="disable the lowercase fallback on vector lookup")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default: %(default)s)")
    p.set_defaults(func=cmd_enhance)

    p = sub.add_parser("convert", help="turn gold enhanced graphs into basic trees")
    p.add_argument("--to", choices=["composite", "orphan"], required=True)
    p.add_argument("--input", default="-")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("evaluate", help="score system output against gold")
    p.add_argument("--system", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--metric", choices=["enhanced", "remnant"], default="enhanced")
    p.add_argument("--format", choices=["table", "kv", "both"], default="both")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("stats", help="treebank statistics")
    p.add_argument("--input", default="-")
    p.add_argument("--format", choices=["table", "kv", "both"], default="both")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ConlluError, EmbeddingFormatError, EvalInputError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
