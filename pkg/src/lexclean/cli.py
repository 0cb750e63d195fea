"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data or parse error, 3 internal
invariant violation.  Logs go to stderr; stdout carries only machine
readable output (the evaluation report).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .baselines import BaselineConfig, run_baseline
from .corpus import TokenizeConfig, build_corpus, read_dir, read_lines, tokenize, write_corpus
from .embeddings import (EmbeddingFormatError, TrainConfig, load_word2vec_text,
                         save_word2vec_text, train_skipgram)
from .evalkit import NoiseModel, evaluate, inject_noise, make_fixture, write_gold
from .normmap import read_tsv
from .unsupclean import NormalizerConfig, build_normalization_map, normalize_corpus

logger = logging.getLogger("lexclean")

ALGORITHMS = ("unsupclean", "sridhar", "enelvo", "ghosh")
DEFAULT_ALPHA = {"unsupclean": 0.56, "ghosh": 0.7}


class UsageError(Exception):
    pass


class InvariantError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _unit_interval(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"{value} is outside (0, 1)")
    return value


def _add_corpus_args(p):
    p.add_argument("corpus", type=Path, help="corpus file (one document per line) or directory of .txt files")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--docs-per-line", action="store_true", help="treat the corpus as one document per line (default for files)")
    mode.add_argument("--docs-dir", action="store_true", help="treat the corpus as a directory of .txt documents")
    p.add_argument("--keep-prefix", action="store_true", help="keep leading '#' and '@' on tokens")


def _add_train_args(p):
    g = p.add_argument_group("embedding training")
    g.add_argument("--window", type=int, default=3)
    g.add_argument("--dim", type=int, default=100)
    g.add_argument("--negative", type=int, default=5)
    g.add_argument("--epochs", type=int, default=5)
    g.add_argument("--lr", type=float, default=0.025)
    g.add_argument("--min-count", type=int, default=None, help="default: 1 for corpora under 100k tokens, else 5")
    g.add_argument("--sample", type=float, default=0.0, help="subsampling threshold (0 disables)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lexclean", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("train", help="train skip-gram embeddings on a corpus")
    _add_corpus_args(p)
    p.add_argument("output", type=Path, help="word2vec text file to write")
    _add_train_args(p)
    p.add_argument("--seed", type=int, default=1)

    p = sub.add_parser("normalize", help="build a normalization map and rewrite the corpus")
    _add_corpus_args(p)
    p.add_argument("--algo", choices=ALGORITHMS, default="unsupclean")
    p.add_argument("-o", "--out", type=Path, default=None, help="output directory (default: <corpus>-<algo>)")
    p.add_argument("--vectors", type=Path, help="pretrained word2vec text file")
    p.add_argument("--train-embeddings", action="store_true",
                   help="train embeddings on the corpus (the default when --vectors is absent)")
    p.add_argument("--alpha", type=_unit_interval, default=None,
                   help="string similarity threshold (default 0.56 for unsupclean, 0.7 for ghosh)")
    p.add_argument("--beta", type=_unit_interval, default=0.6, help="ghosh pruning fraction")
    p.add_argument("--gamma", type=float, default=50.0, help="ghosh pruning guard")
    p.add_argument("--k", type=int, default=25, help="nearest neighbours for sridhar/enelvo")
    p.add_argument("--n", type=_unit_interval, default=0.8, help="enelvo lexical weight")
    p.add_argument("--clean-min-freq", type=int, default=100, help="frequency rule for the clean lexicon")
    lex = p.add_mutually_exclusive_group()
    lex.add_argument("--clean-words", type=Path, help="file with one clean word per line")
    lex.add_argument("--queries", type=Path, help="query file; its words form the clean lexicon")
    p.add_argument("--no-cooccurrence-fallback", action="store_true",
                   help="keep cosine*co-occurrence weights even when all are zero")
    p.add_argument("--attach-unembedded", action="store_true", help="experimental, see README")
    p.add_argument("--dump-graphs", type=Path, help="write each variant graph as an edge list here")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=1)
    _add_train_args(p)

    p = sub.add_parser("inject", help="add synthetic noise to a clean corpus")
    _add_corpus_args(p)
    p.add_argument("output", type=Path, help="noisy corpus to write")
    p.add_argument("gold", type=Path, help="gold TSV to write")
    p.add_argument("--kind", choices=("social", "ocr"), default="social")
    p.add_argument("--rate", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=1)

    p = sub.add_parser("eval", help="score a map TSV against a gold TSV")
    p.add_argument("map", type=Path)
    p.add_argument("gold", type=Path)

    p = sub.add_parser("fixture", help="write the synthetic evaluation fixture")
    p.add_argument("outdir", type=Path)
    p.add_argument("--docs", type=int, default=2000)
    p.add_argument("--vocab", type=int, default=200)
    p.add_argument("--rate", type=float, default=0.15)
    p.add_argument("--kind", choices=("social", "ocr"), default="social")
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    p.add_argument("manifest", type=Path)
    return parser


def _load(args):
    tok = TokenizeConfig(strip_prefix=not args.keep_prefix)
    path = args.corpus
    if not path.exists():
        raise FileNotFoundError(f"{path}: no such file or directory")
    texts = read_dir(path) if (args.docs_dir or path.is_dir()) else read_lines(path)
    if not texts:
        raise ValueError(f"{path}: no documents")
    return build_corpus(texts, tok)


def _train_config(args) -> TrainConfig:
    try:
        return TrainConfig(window=args.window, dim=args.dim, negative=args.negative, epochs=args.epochs,
                           initial_lr=args.lr, min_count=args.min_count, sample=args.sample, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _word_list(path: Path) -> tuple[str, ...]:
    words = []
    for line in read_lines(path):
        words.extend(tokenize(line))
    return tuple(dict.fromkeys(words))


def _write_manifest(path: Path, argv, command, config, inputs, outputs, started, **extra):
    payload = {
        "tool": f"lexclean {__version__}",
        "command": command,
        "argv": list(argv),
        "config": config,
        "inputs": [str(p) for p in inputs],
        "outputs": [str(p) for p in outputs],
        "duration_s": round(time.perf_counter() - started, 3),
        **extra,
    }
    path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n", encoding="utf-8")


def cmd_train(args, argv, started):
    config = _train_config(args)
    corpus = _load(args)
    model = train_skipgram(corpus, config)
    save_word2vec_text(model, args.output)
    logger.info("wrote %d vectors of dim %d to %s", len(model), model.dim, args.output)
    config = dataclasses.replace(config, min_count=model.min_count)
    _write_manifest(Path(f"{args.output}.manifest.json"), argv, "train", dataclasses.asdict(config),
                    [args.corpus], [args.output], started, seed=args.seed)


def cmd_normalize(args, argv, started):
    algo = args.algo
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    if args.gamma <= 0:
        raise UsageError("--gamma must be positive")
    alpha = args.alpha if args.alpha is not None else DEFAULT_ALPHA.get(algo, 0.56)
    corpus = _load(args)
    lexicon_file = args.clean_words or args.queries
    clean = _word_list(lexicon_file) if lexicon_file else None
    out = args.out or args.corpus.with_name(f"{args.corpus.name}-{algo}")
    out.mkdir(parents=True, exist_ok=True)

    config: dict = {"algorithm": algo, "alpha": alpha, "clean_min_freq": args.clean_min_freq,
                    "clean_words": str(lexicon_file) if lexicon_file else None}
    model = None
    inputs = [args.corpus] + ([lexicon_file] if lexicon_file else [])
    if algo != "ghosh":
        if args.vectors:
            model = load_word2vec_text(args.vectors)
            inputs.append(args.vectors)
            config["vectors"] = str(args.vectors)
        else:
            tc = _train_config(args)
            model = train_skipgram(corpus, tc)
            config["train"] = dataclasses.asdict(dataclasses.replace(tc, min_count=model.min_count))

    if algo == "unsupclean":
        nc = NormalizerConfig(alpha=alpha, clean_min_freq=args.clean_min_freq, clean_words=clean,
                              cooccurrence_fallback=not args.no_cooccurrence_fallback,
                              attach_unembedded=args.attach_unembedded, seed=args.seed,
                              workers=max(1, args.workers))
        def dump(word, graph):
            graph.write_edgelist(args.dump_graphs / f"{word}.edges")

        if args.dump_graphs:
            args.dump_graphs.mkdir(parents=True, exist_ok=True)
        nmap = build_normalization_map(corpus, model, nc, graph_sink=dump if args.dump_graphs else None)
        config.update(cooccurrence_fallback=nc.cooccurrence_fallback,
                      attach_unembedded=nc.attach_unembedded, seed=nc.seed)
    else:
        bc = BaselineConfig(k=args.k, n=args.n, alpha=alpha, beta_fraction=args.beta, gamma=args.gamma,
                            clean_min_freq=args.clean_min_freq, clean_words=clean)
        nmap = run_baseline(algo, corpus, model, bc)
        config.update(k=bc.k, n=bc.n, beta_fraction=bc.beta_fraction, gamma=bc.gamma)

    try:
        nmap.check()
    except AssertionError as exc:
        raise InvariantError(str(exc)) from exc
    outputs = [out / "map.tsv", out / "clusters.json", out / "normalized.txt"]
    nmap.write_tsv(outputs[0])
    nmap.write_clusters_json(outputs[1])
    write_corpus(normalize_corpus(corpus, nmap), outputs[2])
    logger.info("%s: %d clusters, %d rewritten words -> %s", algo, len(nmap.clusters),
                sum(1 for w, c in nmap.rewrite.items() if w != c), out)
    _write_manifest(out / "manifest.json", argv, "normalize", config, inputs, outputs, started,
                    seed=args.seed)


def cmd_inject(args, argv, started):
    if not 0.0 <= args.rate <= 1.0:
        raise UsageError("--rate must lie in [0, 1]")
    corpus = _load(args)
    noise = NoiseModel(kind=args.kind, rate=args.rate, seed=args.seed)
    noisy, gold = inject_noise(corpus, noise)
    write_corpus(noisy, args.output)
    write_gold(gold, args.gold)
    logger.info("%d variants injected", sum(1 for k, v in gold.items() if k != v))
    config = {k: v for k, v in dataclasses.asdict(noise).items() if k != "confusions"}
    _write_manifest(Path(f"{args.output}.manifest.json"), argv, "inject", config,
                    [args.corpus], [args.output, args.gold], started, seed=args.seed)


def cmd_eval(args, argv, started):
    report = evaluate(read_tsv(args.map), read_tsv(args.gold))
    print(json.dumps(report, sort_keys=True))


def cmd_fixture(args, argv, started):
    fx = make_fixture(args.docs, args.vocab, args.rate, args.seed, kind=args.kind)
    args.outdir.mkdir(parents=True, exist_ok=True)
    (args.outdir / "clean.txt").write_text("".join(" ".join(d) + "\n" for d in fx.clean), encoding="utf-8")
    write_corpus(fx.noisy, args.outdir / "noisy.txt")
    write_gold(fx.gold, args.outdir / "gold.tsv")
    (args.outdir / "vocab.txt").write_text("".join(w + "\n" for w in fx.vocab), encoding="utf-8")
    _write_manifest(args.outdir / "manifest.json", argv, "fixture",
                    {"docs": args.docs, "vocab": args.vocab, "rate": args.rate, "kind": args.kind},
                    [], ["clean.txt", "noisy.txt", "gold.tsv", "vocab.txt"], started, seed=args.seed)


def cmd_replay(args, argv, started):
    manifest = json.loads(args.manifest.read_text(encoding="utf-8"))
    return main(manifest["argv"])


COMMANDS = {"train": cmd_train, "normalize": cmd_normalize, "inject": cmd_inject,
            "eval": cmd_eval, "fixture": cmd_fixture, "replay": cmd_replay}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(format="%(levelname)s %(name)s: %(message)s",
                        level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr)
    started = time.perf_counter()
    try:
        return COMMANDS[args.command](args, argv, started) or 0
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"lexclean: error: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        print(f"lexclean: internal invariant violated: {exc}", file=sys.stderr)
        return 3
    except (OSError, EmbeddingFormatError, ValueError, KeyError) as exc:
        print(f"lexclean: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
