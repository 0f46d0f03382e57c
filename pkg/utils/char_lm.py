"""Character n-gram language model."""

import math
from collections import Counter, defaultdict
from functools import lru_cache


class CharNgramLM:
    """
    Character-level k-gram language model with add-alpha smoothing.

    Counts are kept for every context length 0..k-1; a query backs off to the
    longest context suffix seen in training and applies add-alpha there.
    """

    BOS = '\x02'
    EOS = '\x03'

    def __init__(self, order=5, alpha=0.1, cache_size=65536):
        self.order = order
        self.alpha = alpha
        self.counts = defaultdict(Counter)
        self.context_totals = Counter()
        self.vocab = set()
        self._cached_prob = lru_cache(maxsize=cache_size)(self._prob)

    def train(self, texts):
        """Train on an iterable of strings."""
        history = self.order - 1
        for text in texts:
            padded = self.BOS * history + text + self.EOS
            for i in range(history, len(padded)):
                char = padded[i]
                for h in range(history + 1):
                    context = padded[i - h:i]
                    self.counts[context][char] += 1
                    self.context_totals[context] += 1
                self.vocab.add(char)
        self._cached_prob.cache_clear()
        return self

    def _context(self, context):
        history = self.order - 1
        if history == 0:
            return ''
        return (self.BOS * history + context)[-history:]

    def prob(self, context, char):
        """P(char | context) with add-alpha smoothing at the longest seen context."""
        return self._cached_prob(self._context(context), char)

    def cache_info(self):
        return self._cached_prob.cache_info()

    def _prob(self, context, char):
        vocab_size = len(self.vocab) + 1
        for start in range(len(context) + 1):
            suffix = context[start:]
            total = self.context_totals.get(suffix, 0)
            if total:
                count = self.counts[suffix].get(char, 0)
                break
        else:
            total, count = 0, 0

        return (count + self.alpha) / (total + self.alpha * vocab_size)

    def log_prob(self, context, char):
        return math.log(self.prob(context, char))

    def extend(self, context, text):
        """Log probability of appending `text` after `context`."""
        total = 0.0
        for ch in text:
            total += self.log_prob(context, ch)
            context = (context + ch)[-self.order:]
        return total

    def end(self, context):
        return self.log_prob(context, self.EOS)

    def score(self, text):
        """Log probability of an entire sentence, end marker included."""
        return self.extend('', text) + self.end(text)

    def perplexity(self, texts):
        total_log_prob = 0.0
        total_chars = 0
        for text in texts:
            total_log_prob += self.score(text)
            total_chars += len(text) + 1
        return math.exp(-total_log_prob / total_chars)

    def to_dict(self):
        return {
            'order': self.order,
            'alpha': self.alpha,
            'counts': {ctx: dict(chars) for ctx, chars in self.counts.items()},
        }

    @classmethod
    def from_dict(cls, data, cache_size=65536):
        lm = cls(order=data['order'], alpha=data['alpha'], cache_size=cache_size)
        for ctx, chars in data['counts'].items():
            counter = Counter(chars)
            lm.counts[ctx] = counter
            lm.context_totals[ctx] = sum(counter.values())
            if ctx == '':
                lm.vocab.update(counter)
        return lm
