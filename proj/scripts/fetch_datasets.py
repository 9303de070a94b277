#!/usr/bin/env python3
"""Download the public benchmark datasets used by the acceptance suite.

Each dataset lands in <dest>/<name>/{train.txt,valid.txt,test.txt} as plain
head<TAB>relation<TAB>tail TSV, which is what the acceptance tests and the
kgprof CLI expect.

FB15k-237 is post-processed the way most toolkits load it: validation and
test triples whose entities or relations never appear in the training split
are dropped, so the filtered totals are reproducible (271,115+ triples in
train stay untouched; a few dozen valid/test triples go).
"""

import argparse
import sys
import urllib.error
import urllib.request
from pathlib import Path

KGDATASETS = "https://raw.githubusercontent.com/ZhenfengLei/KGDatasets/master"
CODEX = "https://raw.githubusercontent.com/tsafavi/codex/master/data/triples"
KGE = "https://raw.githubusercontent.com/DeepGraphLearning/KnowledgeGraphEmbedding/master/data"

SPLITS = ("train.txt", "valid.txt", "test.txt")

DATASETS = {
    "nations": {"base": f"{KGDATASETS}/Nations"},
    "kinships": {"base": f"{KGDATASETS}/Kinships"},
    "umls": {"base": f"{KGDATASETS}/UMLS"},
    "countries": {"base": f"{KGDATASETS}/Countries/Countries_S1"},
    "codex-small": {"base": f"{CODEX}/codex-s"},
    "fb15k-237": {"base": f"{KGE}/FB15k-237", "filter_to_train": True},
}


def download(url: str, dest: Path) -> None:
    print(f"  {url} -> {dest}")
    with urllib.request.urlopen(url, timeout=60) as response:
        dest.write_bytes(response.read())


def parse_triples(path: Path):
    triples = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"{path}: expected 3 tab-separated fields, got {len(parts)}")
        triples.append(tuple(parts))
    return triples


def filter_to_train(dataset_dir: Path) -> None:
    """Drop valid/test triples with entities or relations unseen in train."""
    train = parse_triples(dataset_dir / "train.txt")
    entities = {h for h, _, _ in train} | {t for _, _, t in train}
    relations = {r for _, r, _ in train}
    for split in ("valid.txt", "test.txt"):
        path = dataset_dir / split
        triples = parse_triples(path)
        kept = [
            (h, r, t)
            for h, r, t in triples
            if h in entities and t in entities and r in relations
        ]
        dropped = len(triples) - len(kept)
        if dropped:
            print(f"  {split}: dropped {dropped} triples with train-unseen labels")
            path.write_text("".join(f"{h}\t{r}\t{t}\n" for h, r, t in kept), encoding="utf-8")


def fetch(name: str, spec: dict, dest_root: Path, force: bool) -> bool:
    dataset_dir = dest_root / name
    if not force and all((dataset_dir / split).exists() for split in SPLITS):
        print(f"{name}: already present, skipping (use --force to re-download)")
        return True
    print(f"{name}:")
    dataset_dir.mkdir(parents=True, exist_ok=True)
    try:
        for split in SPLITS:
            download(f"{spec['base']}/{split}", dataset_dir / split)
    except (urllib.error.URLError, OSError) as err:
        print(f"  failed: {err}", file=sys.stderr)
        return False
    if spec.get("filter_to_train"):
        filter_to_train(dataset_dir)
    return True


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--dest",
        type=Path,
        default=Path(__file__).resolve().parent.parent / "data" / "datasets",
        help="directory to place datasets in (default: data/datasets)",
    )
    parser.add_argument(
        "--only",
        action="append",
        choices=sorted(DATASETS),
        help="fetch just this dataset (repeatable)",
    )
    parser.add_argument("--force", action="store_true", help="re-download existing datasets")
    args = parser.parse_args()

    names = args.only or sorted(DATASETS)
    failures = [n for n in names if not fetch(n, DATASETS[n], args.dest, args.force)]
    if failures:
        print(f"failed to fetch: {', '.join(failures)}", file=sys.stderr)
        return 1
    print(f"done; datasets are under {args.dest}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
