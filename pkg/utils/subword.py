import json
import logging
from collections import Counter, defaultdict

from errors import ConfigurationError, InsufficientDataError
from models import BOUNDARY, UNK_PIECE, SubwordVocab

logger = logging.getLogger(__name__)


class BPETrainer:
    """
    Byte-pair-encoding vocabularies with a character-coverage cutoff.

    Every whitespace token is prefixed with the boundary sentinel; ids 0 and
    1 are reserved for the unknown piece and the sentinel.
    """

    RESERVED = (UNK_PIECE, BOUNDARY)

    # ------------------------------------------------------------------
    # Training
    # ------------------------------------------------------------------

    @staticmethod
    def char_frequencies(corpus):
        counts = Counter()
        for line in corpus:
            for word in line.split():
                counts.update(word)
        return counts

    @staticmethod
    def covered_characters(char_counts, coverage):
        """Drop the rarest characters while the kept share of occurrences stays >= coverage."""
        total = sum(char_counts.values())
        if total == 0:
            return frozenset()
        kept = total
        dropped = set()
        for char, freq in sorted(char_counts.items(), key=lambda kv: (kv[1], kv[0])):
            if (kept - freq) / total < coverage:
                break
            kept -= freq
            dropped.add(char)
        return frozenset(c for c in char_counts if c not in dropped)

    @staticmethod
    def _word_symbols(word, covered):
        return [BOUNDARY] + [c if c in covered else UNK_PIECE for c in word]

    @staticmethod
    def _pairs(symbols):
        for left, right in zip(symbols, symbols[1:]):
            if left != UNK_PIECE and right != UNK_PIECE:
                yield left, right

    @staticmethod
    def _merge_symbols(symbols, pair, merged):
        out = []
        i = 0
        while i < len(symbols):
            if i + 1 < len(symbols) and symbols[i] == pair[0] and symbols[i + 1] == pair[1]:
                out.append(merged)
                i += 2
            else:
                out.append(symbols[i])
                i += 1
        return out

    @staticmethod
    def train_bpe(corpus, size, coverage=0.9995, min_frequency=2):
        """
        Learn merges until the vocabulary reaches `size` pieces or no pair
        occurs at least `min_frequency` times. Equal-frequency pairs are
        ordered by their concatenation, then by the left piece.
        """
        if not 0 < coverage <= 1:
            raise ConfigurationError(f'coverage must be in (0, 1], got {coverage}')
        if min_frequency < 1:
            raise ConfigurationError('min_frequency must be >= 1')

        corpus = list(corpus)
        char_counts = BPETrainer.char_frequencies(corpus)
        covered = BPETrainer.covered_characters(char_counts, coverage)
        minimum = len(covered) + len(BPETrainer.RESERVED)
        if size < minimum:
            raise ConfigurationError(
                f'vocabulary size {size} is below the {len(covered)} covered characters '
                f'plus {len(BPETrainer.RESERVED)} reserved pieces')

        pieces = list(BPETrainer.RESERVED) + sorted(covered)
        known = set(pieces)
        merges = []

        word_counts = Counter(word for line in corpus for word in line.split())
        words = [BPETrainer._word_symbols(w, covered) for w in word_counts]
        freqs = list(word_counts.values())

        pair_counts = Counter()
        where = defaultdict(set)
        for idx, symbols in enumerate(words):
            for pair in BPETrainer._pairs(symbols):
                pair_counts[pair] += freqs[idx]
                where[pair].add(idx)

        while len(pieces) < size:
            candidates = [(freq, pair) for pair, freq in pair_counts.items() if freq >= min_frequency]
            if not candidates:
                break
            best_freq = max(freq for freq, _ in candidates)
            pair = min((p for freq, p in candidates if freq == best_freq), key=lambda p: (p[0] + p[1], p[0]))
            merged = pair[0] + pair[1]
            merges.append(pair)
            if merged not in known:
                known.add(merged)
                pieces.append(merged)

            for idx in sorted(where.pop(pair, ())):
                old = words[idx]
                for p in BPETrainer._pairs(old):
                    pair_counts[p] -= freqs[idx]
                new = BPETrainer._merge_symbols(old, pair, merged)
                words[idx] = new
                for p in BPETrainer._pairs(new):
                    pair_counts[p] += freqs[idx]
                    where[p].add(idx)
            pair_counts = Counter({p: c for p, c in pair_counts.items() if c > 0})

        truncated = len(pieces) < size
        if truncated:
            logger.warning('BPE vocabulary stopped at %d of %d pieces: no pair repeats often enough',
                           len(pieces), size)
        kept = sum(char_counts[c] for c in covered)
        total = sum(char_counts.values())
        logger.info('Trained BPE: %d pieces, %d merges, %d/%d characters covered (%.5f of occurrences)',
                    len(pieces), len(merges), len(covered), len(char_counts), kept / total if total else 1.0)
        return SubwordVocab(
            pieces=pieces,
            merges=merges,
            covered_chars=covered,
            coverage=coverage,
            size=size,
            truncated=truncated,
        )

    # ------------------------------------------------------------------
    # Segmentation
    # ------------------------------------------------------------------

    @staticmethod
    def _segment_word(word, vocab, ranks):
        symbols = BPETrainer._word_symbols(word, vocab.covered_chars)
        while len(symbols) > 1:
            best = None
            for pair in BPETrainer._pairs(symbols):
                rank = ranks.get(pair)
                if rank is not None and (best is None or rank < best[0]):
                    best = (rank, pair)
            if best is None:
                break
            pair = best[1]
            symbols = BPETrainer._merge_symbols(symbols, pair, pair[0] + pair[1])
        return symbols

    @staticmethod
    def segment_pieces(text, vocab):
        """Piece strings for `text`; merges apply lowest-rank first, which replays training order."""
        ranks = {pair: rank for rank, pair in enumerate(vocab.merges)}
        pieces = []
        for word in text.split():
            pieces.extend(BPETrainer._segment_word(word, vocab, ranks))
        return pieces

    @staticmethod
    def segment(text, vocab):
        return [vocab.id_of(piece) for piece in BPETrainer.segment_pieces(text, vocab)]

    @staticmethod
    def detokenize(pieces):
        return ''.join(pieces).replace(BOUNDARY, ' ').strip()

    @staticmethod
    def avg_subwords_per_sentence(corpus, vocab):
        corpus = list(corpus)
        if not corpus:
            raise InsufficientDataError('cannot average subwords over an empty corpus')
        ranks = {pair: rank for rank, pair in enumerate(vocab.merges)}
        cache = {}
        total = 0
        for line in corpus:
            for word in line.split():
                if word not in cache:
                    cache[word] = len(BPETrainer._segment_word(word, vocab, ranks))
                total += cache[word]
        return total / len(corpus)

    @staticmethod
    def uncovered_characters(corpus, vocab):
        """Characters of `corpus` the vocabulary would segment to the unknown piece, first-seen order."""
        seen = {}
        for line in corpus:
            for char in line:
                if not char.isspace() and char not in vocab.covered_chars:
                    seen.setdefault(char, None)
        return list(seen)

    @staticmethod
    def pieces_used(corpus, vocab):
        ranks = {pair: rank for rank, pair in enumerate(vocab.merges)}
        used = {}
        for line in corpus:
            for word in line.split():
                for piece in BPETrainer._segment_word(word, vocab, ranks):
                    used.setdefault(piece, None)
        return list(used)

    # ------------------------------------------------------------------
    # Persistence
    # ------------------------------------------------------------------

    @staticmethod
    def save(vocab, path):
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(vocab.to_dict(), handle, ensure_ascii=False, indent=1)

    @staticmethod
    def load(path):
        with open(path, encoding='utf-8') as handle:
            return SubwordVocab.from_dict(json.load(handle))
