import json
import logging
import math
from collections import Counter, defaultdict

from errors import (
    AlignmentError,
    EncodingFormatError,
    InsufficientDataError,
    SentinelCollisionError,
)
from models import CharEncodingConfig, DeromanizerConfig, MetricReport, RomanizationMode, TrainingPair
from utils.char_lm import CharNgramLM
from utils.metrics import Metrics
from utils.romanizer import Romanizer
from utils.text import nfc

logger = logging.getLogger(__name__)

MODEL_SCHEMA_VERSION = 1


class DeromanizerModel:
    """
    Segmental noisy-channel model: P(grapheme | romanized codeword) estimated
    from exact alignments, combined with a character k-gram LM over the
    original script. Immutable once built.
    """

    def __init__(self, config, channel_counts, lm, table_fingerprint=None):
        self.config = config
        self.table_fingerprint = table_fingerprint
        self.channel_counts = {s: dict(sorted(gs.items())) for s, gs in sorted(channel_counts.items())}
        self.lm = lm
        self.codewords = frozenset(self.channel_counts)
        self.max_codeword_len = max((len(s) for s in self.codewords), default=0)
        self._channel = {s: self._smoothed(gs) for s, gs in self.channel_counts.items()}

    def __repr__(self):
        return f'<DeromanizerModel {len(self.codewords)} codewords, k={self.config.k}>'

    def _smoothed(self, graphemes):
        alpha = self.config.alpha
        total = sum(graphemes.values()) + alpha * len(graphemes)
        return [(g, (n + alpha) / total) for g, n in graphemes.items()]

    def channel_prob(self, grapheme, codeword):
        for g, p in self._channel.get(codeword, ()):
            if g == grapheme:
                return p
        return 0.0

    def distribution(self, codeword):
        return dict(self._channel.get(codeword, ()))

    def options_at(self, text, i):
        """Codewords matching at position i with their log channel scores."""
        options = []
        for length in range(1, min(self.max_codeword_len, len(text) - i) + 1):
            candidates = self._channel.get(text[i:i + length])
            if candidates:
                options.append((length, [(g, math.log(p)) for g, p in candidates]))
        if not options:
            options.append((1, [(text[i], 0.0)]))
        return options

    def to_dict(self):
        return {
            'schema_version': MODEL_SCHEMA_VERSION,
            'config': self.config.to_dict(),
            'table_fingerprint': self.table_fingerprint,
            'codewords': sorted(self.codewords),
            'channel': self.channel_counts,
            'lm': self.lm.to_dict(),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            config=DeromanizerConfig.from_dict(data['config']),
            channel_counts=data['channel'],
            lm=CharNgramLM.from_dict(data['lm']),
            table_fingerprint=data.get('table_fingerprint'),
        )

    def save(self, path):
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(self.to_dict(), handle, ensure_ascii=False, sort_keys=True)

    @classmethod
    def load(cls, path):
        with open(path, encoding='utf-8') as handle:
            return cls.from_dict(json.load(handle))


class Deromanizer:
    """Learned mapping from romanized text back to the original script."""

    # ------------------------------------------------------------------
    # Character-level serialization (one codepoint per token)
    # ------------------------------------------------------------------

    @staticmethod
    def encode_chars(text, cfg=None):
        cfg = cfg or CharEncodingConfig()
        if cfg.space_sentinel in text:
            raise SentinelCollisionError(
                f'sentinel U+{ord(cfg.space_sentinel):04X} occurs in the input')
        return cfg.separator.join(cfg.space_sentinel if ch == ' ' else ch for ch in text)

    @staticmethod
    def decode_chars(encoded, cfg=None):
        cfg = cfg or CharEncodingConfig()
        if encoded == '':
            return ''
        chars = []
        for position, token in enumerate(encoded.split(cfg.separator)):
            if len(token) != 1:
                raise EncodingFormatError(f'token {position} is {token!r}, expected one codepoint')
            chars.append(' ' if token == cfg.space_sentinel else token)
        return ''.join(chars)

    # ------------------------------------------------------------------
    # Training data
    # ------------------------------------------------------------------

    @staticmethod
    def _fold_deletions(pieces):
        """Attach graphemes with an empty romanization to a neighbouring piece."""
        folded = []
        pending = ''
        for codeword, grapheme in pieces:
            if codeword == '':
                if folded:
                    last_cw, last_g = folded[-1]
                    folded[-1] = (last_cw, last_g + grapheme)
                else:
                    pending += grapheme
                continue
            folded.append((codeword, pending + grapheme))
            pending = ''
        if pending:
            folded.append(('', pending))
        return folded

    @staticmethod
    def make_training_pairs(corpus, table, mode):
        pairs = []
        for sentence in corpus:
            sentence = nfc(sentence)
            alignment = Deromanizer._fold_deletions(Romanizer.aligned(sentence, table, mode))
            romanized = ''.join(cw for cw, _ in alignment)
            pairs.append(TrainingPair(romanized=romanized, original=sentence, alignment=alignment))
        return pairs

    @staticmethod
    def _realign(pairs, table, mode):
        aligned = []
        for index, pair in enumerate(pairs):
            if pair.alignment is not None:
                pair.check_alignment(index)
                aligned.append(pair)
                continue
            if table is None or mode is None:
                raise AlignmentError(index, 'pair has no alignment and no table was given to re-align it')
            redone = Deromanizer.make_training_pairs([pair.original], table, mode)[0]
            if redone.romanized != nfc(pair.romanized):
                raise AlignmentError(
                    index, f'romanizing the original gives {redone.romanized!r}, not {pair.romanized!r}')
            aligned.append(redone)
        return aligned

    @staticmethod
    def train_deromanizer(pairs, config=None, table=None, mode=None):
        """
        Estimate channel and LM counts from aligned pairs. Pairs without an
        alignment are re-aligned by romanizing their original side with
        `table`/`mode`; a mismatch is an error.
        """
        config = config or DeromanizerConfig()
        pairs = list(pairs)
        if not pairs:
            raise InsufficientDataError('cannot train a deromanizer on zero sentence pairs')
        if mode is not None:
            mode = RomanizationMode.parse(mode)

        pairs = Deromanizer._realign(pairs, table, mode)

        channel = defaultdict(Counter)
        for pair in pairs:
            for codeword, grapheme in pair.alignment:
                if codeword:
                    channel[codeword][grapheme] += 1

        lm = CharNgramLM(order=config.k, alpha=config.alpha).train(p.original for p in pairs)
        fingerprint = table.fingerprint(mode) if table is not None and mode is not None else None

        model = DeromanizerModel(config, channel, lm, table_fingerprint=fingerprint)
        logger.info('Trained deromanizer on %d pairs: %d codewords, LM vocabulary %d',
                    len(pairs), len(model.codewords), len(lm.vocab))
        return model

    # ------------------------------------------------------------------
    # Decoding
    # ------------------------------------------------------------------

    @staticmethod
    def _chunks(text, max_length):
        if len(text) <= max_length:
            return [text]
        chunks = []
        start = 0
        while start < len(text):
            end = min(start + max_length, len(text))
            if end < len(text):
                cut = text.rfind(' ', start + 1, end)
                if cut > start:
                    end = cut
            chunks.append(text[start:end])
            start = end
        return chunks

    @staticmethod
    def _better(candidate, incumbent):
        if incumbent is None:
            return True
        if candidate[0] != incumbent[0]:
            return candidate[0] > incumbent[0]
        return candidate[1] < incumbent[1]

    @staticmethod
    def _decode(model, text):
        """
        Beam search over segmentations into codewords. Hypotheses ending at
        the same position with the same LM history are recombined; exact
        score ties go to the lexicographically smallest output.
        """
        cfg = model.config
        lm = model.lm
        history = cfg.k - 1
        n = len(text)
        beams = [dict() for _ in range(n + 1)]
        beams[0][''] = (0.0, '')

        for i in range(n):
            if not beams[i]:
                continue
            hyps = sorted(beams[i].values(), key=lambda h: (-h[0], h[1]))[:cfg.beam]
            options = model.options_at(text, i)
            for score, output in hyps:
                context = output[-history:] if history else ''
                for length, candidates in options:
                    target = beams[i + length]
                    for grapheme, channel_logp in candidates:
                        new_score = score + channel_logp + cfg.lm_weight * lm.extend(context, grapheme)
                        new_output = output + grapheme
                        state = new_output[-history:] if history else ''
                        hyp = (new_score, new_output)
                        if Deromanizer._better(hyp, target.get(state)):
                            target[state] = hyp

        best = None
        for score, output in beams[n].values():
            context = output[-history:] if history else ''
            final = (score + cfg.lm_weight * lm.end(context), output)
            if Deromanizer._better(final, best):
                best = final
        return best[1] if best else ''

    @staticmethod
    def deromanize(model, text):
        text = nfc(text)
        if not text:
            return ''
        chunks = Deromanizer._chunks(text, model.config.max_length)
        return ''.join(Deromanizer._decode(model, chunk) for chunk in chunks)

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    @staticmethod
    def _split_pairs(test_pairs):
        romanized, originals = [], []
        for pair in test_pairs:
            if isinstance(pair, TrainingPair):
                romanized.append(pair.romanized)
                originals.append(pair.original)
            else:
                romanized.append(pair[0])
                originals.append(pair[1])
        return romanized, originals

    @staticmethod
    def score_outputs(hypotheses, references, chrf_config=None, name='chrf'):
        per_sentence = [Metrics.chrf(h, r, chrf_config) for h, r in zip(hypotheses, references)]
        score = Metrics.chrf(list(hypotheses), list(references), chrf_config) if references else 0.0
        bleu = Metrics.bleu(list(hypotheses), list(references)) if references else 0.0
        return MetricReport(metric=name, score=score, per_sentence=per_sentence,
                            extra={'bleu': bleu, 'exact_match': sum(h == r for h, r in zip(hypotheses, references))})

    @staticmethod
    def evaluate_deromanization(model, test_pairs, chrf_config=None):
        romanized, originals = Deromanizer._split_pairs(test_pairs)
        outputs = [Deromanizer.deromanize(model, text) for text in romanized]
        return Deromanizer.score_outputs(outputs, originals, chrf_config)

    @staticmethod
    def evaluate_rule_based(test_pairs, table, mode, chrf_config=None):
        """The built-in baseline: invert the table with best-effort matching."""
        romanized, originals = Deromanizer._split_pairs(test_pairs)
        outputs = [Romanizer.deromanize_rule_based(text, table, mode, best_effort=True) for text in romanized]
        return Deromanizer.score_outputs(outputs, originals, chrf_config)
