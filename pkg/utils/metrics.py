import logging
import math
import re
from collections import Counter

import numpy as np

from errors import ConfigurationError, LengthMismatchError
from models import BleuConfig, BootstrapConfig, BootstrapResult, ChrfConfig

logger = logging.getLogger(__name__)

_WHITESPACE = re.compile(r'\s+')
_13A_PUNCT = re.compile(r'([\{-\~\[-\` -\&\(-\+\:-\@\/])')
_13A_PERIOD_AFTER_NONDIGIT = re.compile(r'([^0-9])([\.,])')
_13A_PERIOD_BEFORE_NONDIGIT = re.compile(r'([\.,])([^0-9])')
_13A_DASH_AFTER_DIGIT = re.compile(r'([0-9])(-)')


def _log(value):
    return math.log(value) if value > 0 else -9999999999.0


class Metrics:
    """
    chrF and BLEU from sufficient statistics, paired bootstrap resampling and
    corpus type counts. Scores are on a 0-100 scale.
    """

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------

    @staticmethod
    def tokenize_13a(line):
        """mteval-v13a tokenization: split punctuation, keep decimals and numeric ranges together."""
        norm = line.replace('<skipped>', '').replace('-\n', '').replace('\n', ' ')
        norm = (norm.replace('&quot;', '"').replace('&amp;', '&')
                .replace('&lt;', '<').replace('&gt;', '>'))
        norm = f' {norm} '
        norm = _13A_PUNCT.sub(r' \1 ', norm)
        norm = _13A_PERIOD_AFTER_NONDIGIT.sub(r'\1 \2 ', norm)
        norm = _13A_PERIOD_BEFORE_NONDIGIT.sub(r' \1 \2', norm)
        norm = _13A_DASH_AFTER_DIGIT.sub(r'\1 \2 ', norm)
        return _WHITESPACE.sub(' ', norm).strip()

    @staticmethod
    def char_ngrams(text, n):
        return Counter(text[i:i + n] for i in range(len(text) - n + 1))

    @staticmethod
    def word_ngrams(tokens, n):
        return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))

    @staticmethod
    def _as_corpora(hyp, ref):
        if isinstance(hyp, str) and isinstance(ref, str):
            return [hyp], [ref]
        hyps, refs = list(hyp), list(ref)
        if len(hyps) != len(refs):
            raise LengthMismatchError(f'{len(hyps)} hypotheses vs {len(refs)} references')
        return hyps, refs

    # ------------------------------------------------------------------
    # chrF
    # ------------------------------------------------------------------

    @staticmethod
    def chrf_stats(hyp, ref, cfg=None):
        """[hyp n-grams, ref n-grams, matches] for n = 1..max_n, flattened."""
        cfg = cfg or ChrfConfig()
        if cfg.whitespace_removed:
            hyp = _WHITESPACE.sub('', hyp)
            ref = _WHITESPACE.sub('', ref)
        stats = []
        for n in range(1, cfg.max_n + 1):
            hyp_ngrams = Metrics.char_ngrams(hyp, n)
            ref_ngrams = Metrics.char_ngrams(ref, n)
            stats.extend([
                sum(hyp_ngrams.values()),
                sum(ref_ngrams.values()),
                sum((hyp_ngrams & ref_ngrams).values()),
            ])
        return stats

    @staticmethod
    def chrf_from_stats(stats, cfg=None):
        """
        Average precision and recall over the orders where both sides have
        n-grams, then combine with the F-beta formula.
        """
        cfg = cfg or ChrfConfig()
        precision = recall = 0.0
        orders = 0
        for i in range(cfg.max_n):
            hyp_total, ref_total, matches = stats[3 * i:3 * i + 3]
            if hyp_total > 0 and ref_total > 0:
                precision += matches / hyp_total
                recall += matches / ref_total
                orders += 1
        if orders == 0:
            return 0.0
        precision /= orders
        recall /= orders
        if precision + recall == 0:
            return 0.0
        beta2 = cfg.beta ** 2
        return 100.0 * (1 + beta2) * precision * recall / (beta2 * precision + recall)

    @staticmethod
    def chrf(hyp, ref, cfg=None):
        """Sentence chrF for two strings, corpus chrF (summed statistics) for two lists."""
        cfg = cfg or ChrfConfig()
        hyps, refs = Metrics._as_corpora(hyp, ref)
        totals = [0] * (3 * cfg.max_n)
        for h, r in zip(hyps, refs):
            for i, value in enumerate(Metrics.chrf_stats(h, r, cfg)):
                totals[i] += value
        return Metrics.chrf_from_stats(totals, cfg)

    @staticmethod
    def sentence_chrf(hyps, refs, cfg=None):
        hyps, refs = Metrics._as_corpora(hyps, refs)
        return [Metrics.chrf(h, r, cfg) for h, r in zip(hyps, refs)]

    @staticmethod
    def char_overlap(corpus_a, corpus_b, cfg=None):
        """chrF of corpus_a (hypothesis side) against corpus_b, each joined into one segment."""
        return Metrics.chrf(' '.join(corpus_a), ' '.join(corpus_b), cfg)

    # ------------------------------------------------------------------
    # BLEU
    # ------------------------------------------------------------------

    @staticmethod
    def _bleu_tokens(text, cfg):
        if cfg.tokenizer == '13a':
            text = Metrics.tokenize_13a(text)
        return text.split()

    @staticmethod
    def bleu_stats(hyp, ref, cfg=None):
        """[sys_len, ref_len, correct_1..correct_N, total_1..total_N]"""
        cfg = cfg or BleuConfig()
        hyp_tokens = Metrics._bleu_tokens(hyp, cfg)
        ref_tokens = Metrics._bleu_tokens(ref, cfg)
        correct, total = [], []
        for n in range(1, cfg.max_n + 1):
            hyp_ngrams = Metrics.word_ngrams(hyp_tokens, n)
            ref_ngrams = Metrics.word_ngrams(ref_tokens, n)
            correct.append(sum((hyp_ngrams & ref_ngrams).values()))
            total.append(max(len(hyp_tokens) - n + 1, 0))
        return [len(hyp_tokens), len(ref_tokens)] + correct + total

    @staticmethod
    def bleu_from_stats(stats, cfg=None):
        """
        Geometric mean of modified precisions with exponential smoothing: the
        k-th order with no matches gets precision 1 / (2^k * total). Orders
        with no hypothesis n-grams end the product; an empty hypothesis
        scores 0 through a zero brevity penalty.
        """
        cfg = cfg or BleuConfig()
        max_n = cfg.max_n
        sys_len, ref_len = stats[0], stats[1]
        correct = stats[2:2 + max_n]
        total = stats[2 + max_n:2 + 2 * max_n]

        precisions = [0.0] * max_n
        smooth = 1.0
        order = max_n
        for n in range(max_n):
            if total[n] == 0:
                break
            if cfg.effective_order:
                order = n + 1
            if correct[n] == 0:
                smooth *= 2
                precisions[n] = 100.0 / (smooth * total[n])
            else:
                precisions[n] = 100.0 * correct[n] / total[n]

        brevity_penalty = 1.0
        if sys_len < ref_len:
            brevity_penalty = math.exp(1 - ref_len / sys_len) if sys_len > 0 else 0.0
        return brevity_penalty * math.exp(sum(_log(p) for p in precisions[:order]) / order)

    @staticmethod
    def bleu(hyps, refs, cfg=None):
        cfg = cfg or BleuConfig()
        hyps, refs = Metrics._as_corpora(hyps, refs)
        totals = [0] * (2 + 2 * cfg.max_n)
        for h, r in zip(hyps, refs):
            for i, value in enumerate(Metrics.bleu_stats(h, r, cfg)):
                totals[i] += value
        return Metrics.bleu_from_stats(totals, cfg)

    # ------------------------------------------------------------------
    # Significance
    # ------------------------------------------------------------------

    @staticmethod
    def _stats_scorer(metric, chrf_config, bleu_config):
        if metric == 'chrf':
            cfg = chrf_config or ChrfConfig()
            return (lambda h, r: Metrics.chrf_stats(h, r, cfg)), (lambda s: Metrics.chrf_from_stats(s, cfg))
        if metric == 'bleu':
            cfg = bleu_config or BleuConfig()
            return (lambda h, r: Metrics.bleu_stats(h, r, cfg)), (lambda s: Metrics.bleu_from_stats(s, cfg))
        raise ConfigurationError(f'unknown metric {metric!r}; expected chrf, bleu or a callable')

    @staticmethod
    def paired_bootstrap(sys_a, sys_b, refs, metric='chrf', cfg=None, chrf_config=None, bleu_config=None):
        """
        Paired bootstrap resampling over segment indices. For the named
        metrics the per-segment sufficient statistics are summed per sample;
        a callable metric(hyps, refs) -> score is re-run on every sample.
        """
        cfg = cfg or BootstrapConfig()
        sys_a, sys_b, refs = list(sys_a), list(sys_b), list(refs)
        if not len(sys_a) == len(sys_b) == len(refs):
            raise LengthMismatchError(
                f'system A has {len(sys_a)} lines, system B {len(sys_b)}, references {len(refs)}')

        n = len(refs)
        rng = np.random.default_rng(cfg.seed)
        indices = rng.integers(0, n, size=(cfg.samples, n)) if n else np.zeros((cfg.samples, 0), dtype=int)

        if callable(metric):
            score_a = metric(sys_a, refs)
            score_b = metric(sys_b, refs)
            a_wins = b_wins = 0
            for row in indices:
                sample_refs = [refs[i] for i in row]
                a = metric([sys_a[i] for i in row], sample_refs)
                b = metric([sys_b[i] for i in row], sample_refs)
                a_wins += a > b
                b_wins += b > a
        else:
            segment_stats, score_of = Metrics._stats_scorer(metric, chrf_config, bleu_config)
            stats_a = np.array([segment_stats(h, r) for h, r in zip(sys_a, refs)], dtype=np.int64)
            stats_b = np.array([segment_stats(h, r) for h, r in zip(sys_b, refs)], dtype=np.int64)
            if n == 0:
                width = len(segment_stats('', ''))
                stats_a = stats_b = np.zeros((0, width), dtype=np.int64)
            score_a = score_of(stats_a.sum(axis=0).tolist())
            score_b = score_of(stats_b.sum(axis=0).tolist())
            a_wins = b_wins = 0
            for row in indices:
                a = score_of(stats_a[row].sum(axis=0).tolist())
                b = score_of(stats_b[row].sum(axis=0).tolist())
                a_wins += a > b
                b_wins += b > a

        p_a = a_wins / cfg.samples
        p_b = b_wins / cfg.samples
        result = BootstrapResult(
            p_a_better=p_a,
            p_b_better=p_b,
            significant=max(p_a, p_b) >= 1 - cfg.alpha,
            score_a=score_a,
            score_b=score_b,
            samples=cfg.samples,
        )
        logger.info('Bootstrap over %d segments, %d samples: p(A>B)=%.3f p(B>A)=%.3f',
                    n, cfg.samples, p_a, p_b)
        return result

    # ------------------------------------------------------------------
    # Corpus counts
    # ------------------------------------------------------------------

    @staticmethod
    def type_count(corpus):
        types = set()
        for line in corpus:
            types.update(line.split())
        return len(types)

    @staticmethod
    def token_count(corpus):
        return sum(len(line.split()) for line in corpus)
