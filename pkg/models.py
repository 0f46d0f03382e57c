from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum

from errors import (
    AlignmentError,
    ConfigurationError,
    LengthMismatchError,
    SentinelCollisionError,
    TableValidationError,
)
from utils.text import nfc, strip_diacritics


class RomanizationMode(str, Enum):
    LOSSY = 'lossy'
    PRESERVING = 'preserving'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ConfigurationError(f'unknown romanization mode {value!r} (lossy|preserving)')


class PassthroughPolicy(str, Enum):
    COPY_UNMAPPED = 'copy_unmapped'
    ERROR_ON_UNMAPPED = 'error_on_unmapped'


# ---------------------------------------------------------------------------
# Romanization tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MappingEntry:
    source: str
    target_preserving: str
    target_lossy: str | None = None
    is_word_space: bool = False
    spaced: bool = False

    def __repr__(self):
        return f'<MappingEntry {self.source!r}>'


@dataclass
class MappingTable:
    """
    Grapheme cluster -> Latin mapping with a lossy and a preserving target per
    entry. Sources and targets are NFC-normalized on construction; the table is
    not mutated afterwards.
    """
    name: str
    entries: tuple = ()
    passthrough_policy: PassthroughPolicy = PassthroughPolicy.COPY_UNMAPPED
    lossy_drops_word_space: bool = False
    _by_source: dict = field(init=False, repr=False, compare=False)
    _max_source_len: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        normalized = []
        seen = set()
        for entry in self.entries:
            source = nfc(entry.source)
            if not source:
                raise TableValidationError('empty source cluster')
            if source in seen:
                raise TableValidationError(f'duplicate source {source!r}')
            seen.add(source)
            lossy = nfc(entry.target_lossy) if entry.target_lossy is not None else None
            normalized.append(MappingEntry(
                source=source,
                target_preserving=nfc(entry.target_preserving),
                target_lossy=lossy,
                is_word_space=entry.is_word_space,
                spaced=entry.spaced,
            ))
        self.entries = tuple(normalized)
        self.passthrough_policy = PassthroughPolicy(self.passthrough_policy)
        self._by_source = {e.source: e for e in self.entries}
        self._max_source_len = max((len(e.source) for e in self.entries), default=0)

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return f'<MappingTable {self.name} ({len(self.entries)} entries)>'

    @property
    def max_source_len(self):
        return self._max_source_len

    def lookup(self, source):
        return self._by_source.get(source)

    def target(self, entry, mode):
        """The string `entry` produces in `mode`."""
        mode = RomanizationMode.parse(mode)
        if entry.is_word_space:
            if mode is RomanizationMode.LOSSY and self.lossy_drops_word_space:
                return ''
            return ' '
        if mode is RomanizationMode.PRESERVING:
            return entry.target_preserving
        if entry.target_lossy is None:
            return strip_diacritics(entry.target_preserving)
        return entry.target_lossy

    def has_derived_lossy_targets(self):
        return all(e.target_lossy is None for e in self.entries)

    def fingerprint(self, mode):
        mode = RomanizationMode.parse(mode)
        payload = {
            'mode': mode.value,
            'passthrough': self.passthrough_policy.value,
            'lossy_drops_word_space': self.lossy_drops_word_space,
            'entries': [[e.source, self.target(e, mode), e.spaced] for e in self.entries],
        }
        blob = json.dumps(payload, ensure_ascii=False, sort_keys=True).encode('utf-8')
        return hashlib.sha256(blob).hexdigest()


@dataclass
class ReversibilityReport:
    injective: bool
    uniquely_decodable: bool
    has_empty_target: bool = False
    witness: str | None = None

    @property
    def reversible(self):
        return self.injective and self.uniquely_decodable and not self.has_empty_target

    def to_dict(self):
        return {
            'injective': self.injective,
            'uniquely_decodable': self.uniquely_decodable,
            'has_empty_target': self.has_empty_target,
            'reversible': self.reversible,
            'witness': self.witness,
        }


# ---------------------------------------------------------------------------
# Deromanization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharEncodingConfig:
    space_sentinel: str = '⌀'
    separator: str = ' '

    def __post_init__(self):
        if len(self.space_sentinel) != 1:
            raise ConfigurationError('space sentinel must be a single codepoint')
        if self.space_sentinel == ' ':
            raise SentinelCollisionError('space sentinel must differ from ASCII space')
        if self.separator != ' ':
            raise ConfigurationError('separator must be a single ASCII space')


@dataclass
class TrainingPair:
    romanized: str
    original: str
    alignment: list | None = None

    def check_alignment(self, index=-1):
        if self.alignment is None:
            return
        codewords = ''.join(s for s, _ in self.alignment)
        graphemes = ''.join(g for _, g in self.alignment)
        if codewords != self.romanized or graphemes != self.original:
            raise AlignmentError(index, 'alignment does not concatenate to the pair')

    def to_dict(self):
        return {
            'romanized': self.romanized,
            'original': self.original,
            'alignment': [list(p) for p in self.alignment] if self.alignment is not None else None,
        }


@dataclass(frozen=True)
class DeromanizerConfig:
    k: int = 5
    alpha: float = 0.1
    lm_weight: float = 1.0
    beam: int = 8
    max_length: int = 1200

    def __post_init__(self):
        if self.k < 1:
            raise ConfigurationError('LM order k must be >= 1')
        if self.alpha <= 0:
            raise ConfigurationError('smoothing alpha must be > 0')
        if self.beam < 1:
            raise ConfigurationError('beam width must be >= 1')
        if self.max_length < 1:
            raise ConfigurationError('max_length must be >= 1')

    @classmethod
    def from_config(cls, cfg):
        return cls(
            k=cfg.DEROM_LM_ORDER,
            alpha=cfg.DEROM_ALPHA,
            lm_weight=cfg.DEROM_LM_WEIGHT,
            beam=cfg.DEROM_BEAM,
            max_length=cfg.DEROM_MAX_LENGTH,
        )

    def to_dict(self):
        return {'k': self.k, 'alpha': self.alpha, 'lambda': self.lm_weight,
                'beam': self.beam, 'max_length': self.max_length}

    @classmethod
    def from_dict(cls, data):
        return cls(k=data['k'], alpha=data['alpha'], lm_weight=data['lambda'],
                   beam=data['beam'], max_length=data.get('max_length', 1200))


# ---------------------------------------------------------------------------
# Subword vocabularies and transfer
# ---------------------------------------------------------------------------

UNK_PIECE = '<unk>'
BOUNDARY = '▁'  # ▁


@dataclass
class SubwordVocab:
    pieces: list
    merges: list
    covered_chars: frozenset
    coverage: float
    size: int | None = None
    truncated: bool = False
    _ids: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.merges = [tuple(m) for m in self.merges]
        self.covered_chars = frozenset(self.covered_chars)
        self._ids = {piece: i for i, piece in enumerate(self.pieces)}

    def __len__(self):
        return len(self.pieces)

    def __repr__(self):
        return f'<SubwordVocab {len(self.pieces)} pieces, {len(self.merges)} merges>'

    def id_of(self, piece):
        return self._ids.get(piece, 0)

    def __contains__(self, piece):
        return piece in self._ids

    def to_dict(self):
        return {
            'pieces': list(self.pieces),
            'merges': [list(m) for m in self.merges],
            'covered_chars': sorted(self.covered_chars),
            'coverage': self.coverage,
            'size': self.size,
            'truncated': self.truncated,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            pieces=list(data['pieces']),
            merges=[tuple(m) for m in data['merges']],
            covered_chars=frozenset(data['covered_chars']),
            coverage=data['coverage'],
            size=data.get('size'),
            truncated=data.get('truncated', False),
        )


@dataclass(frozen=True)
class TransferAssignment:
    child_piece: str
    parent_position: int
    kind: str  # 'matched' | 'replaced'


@dataclass
class TransferReport:
    assignments: list
    matched_count: int
    replaced_count: int
    unused_remaining: int
    seed: int | None
    parent_size: int
    unmatched: list = field(default_factory=list)

    @property
    def child_map(self):
        return {a.child_piece: a.parent_position for a in self.assignments}

    def to_dict(self):
        return {
            'assignments': [[a.child_piece, a.parent_position, a.kind] for a in self.assignments],
            'matched_count': self.matched_count,
            'replaced_count': self.replaced_count,
            'unused_remaining': self.unused_remaining,
            'seed': self.seed,
            'parent_size': self.parent_size,
            'unmatched': list(self.unmatched),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            assignments=[TransferAssignment(p, int(pos), kind) for p, pos, kind in data['assignments']],
            matched_count=data['matched_count'],
            replaced_count=data['replaced_count'],
            unused_remaining=data['unused_remaining'],
            seed=data.get('seed'),
            parent_size=data['parent_size'],
            unmatched=list(data.get('unmatched', [])),
        )


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChrfConfig:
    max_n: int = 6
    beta: float = 2.0
    whitespace_removed: bool = True

    def __post_init__(self):
        if self.max_n < 1:
            raise ConfigurationError('chrF max_n must be >= 1')
        if self.beta <= 0:
            raise ConfigurationError('chrF beta must be > 0')


@dataclass(frozen=True)
class BleuConfig:
    max_n: int = 4
    smoothing: str = 'exp'
    tokenizer: str = '13a'
    effective_order: bool = False

    def __post_init__(self):
        if self.max_n < 1:
            raise ConfigurationError('BLEU max_n must be >= 1')
        if self.smoothing != 'exp':
            raise ConfigurationError(f'unsupported smoothing {self.smoothing!r}')
        if self.tokenizer not in ('13a', 'none'):
            raise ConfigurationError(f'unsupported tokenizer {self.tokenizer!r}')

    @property
    def signature(self):
        return f'nrefs:1|case:mixed|tok:{self.tokenizer}|smooth:{self.smoothing}'


@dataclass(frozen=True)
class BootstrapConfig:
    samples: int = 1000
    alpha: float = 0.05
    seed: int = 12345

    def __post_init__(self):
        if self.samples < 1:
            raise ConfigurationError('bootstrap samples must be >= 1')
        if not 0 < self.alpha < 1:
            raise ConfigurationError('bootstrap alpha must be in (0, 1)')


@dataclass
class BootstrapResult:
    p_a_better: float
    p_b_better: float
    significant: bool
    score_a: float
    score_b: float
    samples: int

    def to_dict(self):
        return {
            'p_a_better': self.p_a_better,
            'p_b_better': self.p_b_better,
            'significant': self.significant,
            'score_a': self.score_a,
            'score_b': self.score_b,
            'samples': self.samples,
        }


@dataclass
class MetricReport:
    metric: str
    score: float
    per_sentence: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def n_sentences(self):
        return len(self.per_sentence)

    def to_dict(self, schema_version=1):
        return {
            'schema_version': schema_version,
            'metric': self.metric,
            'score': self.score,
            'n_sentences': self.n_sentences,
            'per_sentence': list(self.per_sentence),
            **self.extra,
        }


# ---------------------------------------------------------------------------
# Corpora
# ---------------------------------------------------------------------------

@dataclass
class ParallelCorpus:
    sources: list
    targets: list
    src_lang: str = 'xx'
    tgt_lang: str = 'en'

    def __post_init__(self):
        if len(self.sources) != len(self.targets):
            raise LengthMismatchError(
                f'{len(self.sources)} source lines vs {len(self.targets)} target lines')

    def __len__(self):
        return len(self.sources)

    def __repr__(self):
        return f'<ParallelCorpus {self.src_lang}-{self.tgt_lang} ({len(self)} pairs)>'

    def pairs(self):
        return list(zip(self.sources, self.targets))


@dataclass(frozen=True)
class MixtureSpec:
    parent_take: int = 250000
    total_target: int = 650000
    shuffle_seed: int = 0

    def __post_init__(self):
        if self.parent_take < 0 or self.parent_take >= self.total_target:
            raise ConfigurationError('parent_take must be smaller than total_target')


@dataclass
class CorpusStats:
    sentences: int
    tokens: int
    types: int
    avg_subwords: float | None = None

    def to_dict(self):
        data = {'sentences': self.sentences, 'tokens': self.tokens, 'types': self.types}
        if self.avg_subwords is not None:
            data['avg_subwords'] = self.avg_subwords
        return data


