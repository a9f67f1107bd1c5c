"""Corpus ingestion: packaged PD codes and lattice embeddings.

The manifest format is one entry per line::

    <id> <pd-file> <crossing-number> [lattice=FILE] [writhe=W]

Every entry is validated on load: the PD must parse to a reduced
alternating knot diagram whose crossing count matches the manifest.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources

from .diagrams import parse_pd
from .errors import ManifestError, ValidationError

ENV_CORPUS_DIR = "KNOTBOUNDS_CORPUS"


@dataclass(frozen=True)
class CorpusEntry:
    knot_id: str
    pd_path: str
    crossing_number: int
    lattice_path: str | None
    chirality: str
    diagram: object

    def has_lattice(self):
        return self.lattice_path is not None


def default_corpus_dir():
    env = os.environ.get(ENV_CORPUS_DIR)
    if env:
        return env
    return str(resources.files("knotbounds").joinpath("data"))


def corpus_load(root=None):
    """Load and validate every corpus entry under ``root``.

    ``root`` holds ``corpus/manifest.txt`` plus the referenced files.
    Returns entries sorted by knot id; duplicates and invalid entries
    raise.
    """
    root = root or default_corpus_dir()
    manifest = os.path.join(root, "corpus", "manifest.txt")
    if not os.path.exists(manifest):
        if not os.path.isdir(root):
            raise ManifestError(f"corpus directory {root!r} does not exist")
        return []
    entries = {}
    with open(manifest) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#")[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) < 3:
                raise ManifestError(f"manifest line {lineno}: need id, file, Cr")
            knot_id, pd_rel, cr_text = parts[:3]
            try:
                crossing_number = int(cr_text)
            except ValueError:
                raise ManifestError(
                    f"manifest line {lineno}: bad crossing number {cr_text!r}"
                ) from None
            lattice_rel = None
            chirality = ""
            for extra in parts[3:]:
                if extra.startswith("lattice="):
                    lattice_rel = extra[len("lattice="):]
                elif extra.startswith("writhe="):
                    chirality = extra[len("writhe="):]
                else:
                    raise ManifestError(
                        f"manifest line {lineno}: unknown field {extra!r}"
                    )
            if knot_id in entries:
                raise ManifestError(f"duplicate corpus id {knot_id!r}")
            pd_path = os.path.join(root, pd_rel)
            lattice_path = (
                os.path.join(root, lattice_rel) if lattice_rel else None
            )
            entries[knot_id] = _validated_entry(
                knot_id, pd_path, crossing_number, lattice_path, chirality
            )
    return [entries[k] for k in sorted(entries)]


def corpus_entry(knot_id, root=None):
    for entry in corpus_load(root):
        if entry.knot_id == knot_id:
            return entry
    raise ValidationError(f"knot {knot_id!r} not in corpus")


def _validated_entry(knot_id, pd_path, crossing_number, lattice_path, chirality):
    if not os.path.exists(pd_path):
        raise ValidationError(f"{knot_id}: missing PD file {pd_path!r}")
    with open(pd_path) as fh:
        d = parse_pd(fh.read())
    if d.component_count() != 1:
        raise ValidationError(f"{knot_id}: not a knot diagram")
    if d.crossing_count() != crossing_number:
        raise ValidationError(
            f"{knot_id}: crossing count {d.crossing_count()} != manifest "
            f"{crossing_number}"
        )
    if not d.is_alternating():
        raise ValidationError(f"{knot_id}: diagram is not alternating")
    if not d.is_reduced():
        raise ValidationError(f"{knot_id}: diagram is not reduced")
    if lattice_path is not None and not os.path.exists(lattice_path):
        raise ValidationError(f"{knot_id}: missing lattice file {lattice_path!r}")
    return CorpusEntry(
        knot_id=knot_id,
        pd_path=pd_path,
        crossing_number=crossing_number,
        lattice_path=lattice_path,
        chirality=chirality,
        diagram=d,
    )
