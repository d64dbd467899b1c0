"""Write one of the seeded corpora as .mcf files, e.g. for ``unitflow bench``.

Usage: python3 scripts/write_corpus.py planar out/planar --count 20
"""
import argparse
from pathlib import Path

from unitflow.corpora import dial_corpus, mid_corpus, planar_corpus, tiny_corpus
from unitflow.dimacs import serialize_instance

CORPORA = {"tiny": tiny_corpus, "mid": mid_corpus, "planar": planar_corpus, "dial": dial_corpus}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus", choices=sorted(CORPORA))
    ap.add_argument("directory")
    ap.add_argument("--count", type=int, default=None)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    out = Path(args.directory)
    out.mkdir(parents=True, exist_ok=True)
    kw = {"seed": args.seed}
    if args.count is not None:
        kw["count"] = args.count
    k = 0
    for k, inst in enumerate(CORPORA[args.corpus](**kw), 1):
        text = serialize_instance(inst.graph, inst.rotation, [inst.spec.label()])
        (out / f"{args.corpus}_{k:04d}.mcf").write_text(text)
    print(f"wrote {k} instances to {out}")


if __name__ == "__main__":
    main()
