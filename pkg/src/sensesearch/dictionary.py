"""Sense inventory: lookup, pivot-word selection and query reduction.

An ambiguous keyword maps to several dictionary senses; each sense later
becomes one result cluster. Lookup is total: a term the inventory does not
know (typically a proper noun) comes back as a single fallback pseudo-sense
whose gloss is the term itself, so the pipeline downstream never has to
special-case "no senses".
"""

import string
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .clock import SYSTEM_CLOCK
from .errors import DictionaryLoadError, EmptyInventoryError
from .stopwords import DEFAULT_STOPWORDS


class PartOfSpeech(Enum):
    NOUN = "noun"
    VERB = "verb"
    ADJ = "adj"
    ADV = "adv"
    UNKNOWN = "unknown"


_POS_CODES = {
    "n": PartOfSpeech.NOUN,
    "v": PartOfSpeech.VERB,
    "adj": PartOfSpeech.ADJ,
    "adv": PartOfSpeech.ADV,
    "u": PartOfSpeech.UNKNOWN,
}


@dataclass(frozen=True)
class Sense:
    """One dictionary meaning of a headword.

    is_fallback marks the pseudo-sense returned when the inventory had no
    entry and the term was echoed back as its own gloss.
    """

    headword: str
    pos: PartOfSpeech
    gloss: str
    is_fallback: bool = False

    def __post_init__(self):
        if not self.headword or self.headword != self.headword.lower() or _has_space(self.headword):
            raise ValueError(f"headword must be a nonempty lowercase token, got {self.headword!r}")
        if not self.gloss.strip() or "\t" in self.gloss or "\n" in self.gloss:
            raise ValueError(f"gloss must be nonempty and single-line, got {self.gloss!r}")


class InventorySource(Enum):
    OFFLINE_FILE = "offline_file"
    REMOTE = "remote"


@dataclass(frozen=True)
class SenseInventory:
    """Immutable headword -> senses map; reload produces a fresh value."""

    entries: Mapping[str, tuple[Sense, ...]]
    source: InventorySource
    loaded_at: int
    skipped_lines: int = 0

    def __len__(self) -> int:
        return sum(len(v) for v in self.entries.values())


def _has_space(text: str) -> bool:
    return any(ch.isspace() for ch in text)


def load_inventory(path, clock=SYSTEM_CLOCK) -> SenseInventory:
    """Load a TSV sense file (headword<TAB>pos<TAB>gloss, '#' comments).

    Malformed lines are skipped and counted in skipped_lines; a file with no
    valid line at all is an error.
    """
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise DictionaryLoadError(f"cannot read dictionary file {path}: {exc}") from exc

    entries: dict[str, list[Sense]] = {}
    skipped = 0
    for line in text.splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            skipped += 1
            continue
        headword = fields[0].strip().lower()
        pos_code = fields[1].strip().lower()
        gloss = fields[2].strip()
        if not headword or _has_space(headword) or pos_code not in _POS_CODES or not gloss:
            skipped += 1
            continue
        entries.setdefault(headword, []).append(Sense(headword, _POS_CODES[pos_code], gloss))

    if not entries:
        raise EmptyInventoryError(f"no valid sense lines in {path}")
    frozen = {headword: tuple(senses) for headword, senses in entries.items()}
    return SenseInventory(frozen, InventorySource.OFFLINE_FILE, clock.now_ms(), skipped)


def lookup_senses(inv: SenseInventory, term: str) -> list[Sense]:
    """Return the term's senses in file order, or a single fallback sense.

    Case-insensitive and total: the result is never empty.
    """
    token = term.strip().lower()
    if not token:
        raise ValueError("term must be nonempty")
    if _has_space(token):
        raise ValueError(f"term must be a single token, got {term!r}")
    found = inv.entries.get(token)
    if found:
        return list(found)
    return [Sense(headword=token, pos=PartOfSpeech.UNKNOWN, gloss=token, is_fallback=True)]


def select_pivot_word(inv: SenseInventory, tokens: Sequence[str], stopwords: Iterable[str] = DEFAULT_STOPWORDS) -> str:
    """Pick the token worth expanding: the one with the most dictionary senses.

    Ties go to the leftmost token. When no token has any real sense, the
    leftmost non-stopword wins (leftmost token if all are stopwords).
    """
    if not tokens:
        raise ValueError("token list must be nonempty")
    stopset = set(stopwords)
    best_token = tokens[0]
    best_count = -1
    for token in tokens:
        senses = lookup_senses(inv, token)
        count = 0 if senses[0].is_fallback else len(senses)
        if count > best_count:
            best_token, best_count = token, count
    if best_count > 0:
        return best_token
    for token in tokens:
        if token.lower() not in stopset:
            return token
    return tokens[0]


def reduce_query(tokens: Sequence[str], stopwords: Iterable[str] = DEFAULT_STOPWORDS) -> list[str]:
    """Strip stopwords, keeping order; an all-stopword query passes through unchanged."""
    if not tokens:
        raise ValueError("token list must be nonempty")
    stopset = set(stopwords)
    kept = [t for t in tokens if t.lower() not in stopset]
    return kept if kept else list(tokens)


def tokenize_query(text: str) -> list[str]:
    """Lowercase and split a raw query, trimming punctuation off token edges."""
    tokens = []
    for raw in text.lower().split():
        token = raw.strip(string.punctuation)
        if token:
            tokens.append(token)
    return tokens
