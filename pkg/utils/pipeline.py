import gzip
import json
import logging
import math
from io import TextIOWrapper

import numpy as np
import pandas as pd

from errors import (
    ConfigurationError,
    EncodingFormatError,
    InsufficientDataError,
    InvalidLanguageCodeError,
)
from models import CorpusStats, DeromanizerConfig, MixtureSpec, ParallelCorpus, RomanizationMode
from utils.deromanizer import Deromanizer
from utils.metrics import Metrics
from utils.romanizer import Romanizer
from utils.subword import BPETrainer

logger = logging.getLogger(__name__)

ABLATION_COLUMNS = ['fraction', 'seed', 'size', 'chrf', 'bleu']
STATS_COLUMNS = ['corpus', 'sentences', 'tokens', 'types', 'avg_subwords',
                 'tokens_change', 'types_change', 'avg_subwords_change']


class Pipeline:
    """Corpus ingestion, finetuning-mixture construction and experiment reports."""

    # ------------------------------------------------------------------
    # I/O
    # ------------------------------------------------------------------

    @staticmethod
    def open_text(path, mode='r'):
        """Open plain or gzip-compressed UTF-8 text."""
        if path.endswith('.gz'):
            return TextIOWrapper(gzip.open(path, mode + 'b'), encoding='utf-8')
        return open(path, mode, encoding='utf-8')

    @staticmethod
    def iter_lines(stream):
        for line in stream:
            yield line.rstrip('\r\n')

    @staticmethod
    def read_lines(path):
        with Pipeline.open_text(path) as handle:
            return list(Pipeline.iter_lines(handle))

    @staticmethod
    def write_lines(lines, path):
        with Pipeline.open_text(path, 'w') as handle:
            for line in lines:
                handle.write(line + '\n')

    @staticmethod
    def split_tsv_line(line, line_no):
        source, sep, target = line.partition('\t')
        if not sep:
            raise EncodingFormatError(f'line {line_no}: expected two tab-separated columns')
        return source, target

    @staticmethod
    def read_parallel(source_path, target_path=None, src_lang='xx', tgt_lang='en'):
        """Paired files, or a single two-column TSV when target_path is omitted."""
        if target_path is not None:
            return ParallelCorpus(Pipeline.read_lines(source_path), Pipeline.read_lines(target_path),
                                  src_lang, tgt_lang)
        sources, targets = [], []
        for line_no, line in enumerate(Pipeline.read_lines(source_path), start=1):
            source, target = Pipeline.split_tsv_line(line, line_no)
            sources.append(source)
            targets.append(target)
        return ParallelCorpus(sources, targets, src_lang, tgt_lang)

    @staticmethod
    def write_parallel(corpus, path):
        Pipeline.write_lines((f'{s}\t{t}' for s, t in corpus.pairs()), path)

    # ------------------------------------------------------------------
    # Language tags and mixtures
    # ------------------------------------------------------------------

    @staticmethod
    def language_tag(code):
        if not code or any(ch.isspace() for ch in code):
            raise InvalidLanguageCodeError(f'invalid language code {code!r}')
        return f'<2{code}>'

    @staticmethod
    def tag_line(line, code):
        return f'{Pipeline.language_tag(code)} {line}'

    @staticmethod
    def tag_targets(corpus, target_lang):
        """Prefix every source line with `<2xx> `. Not idempotent."""
        tag = Pipeline.language_tag(target_lang)
        return ParallelCorpus(
            sources=[f'{tag} {s}' for s in corpus.sources],
            targets=list(corpus.targets),
            src_lang=corpus.src_lang,
            tgt_lang=target_lang,
        )

    @staticmethod
    def mix_corpora(parent, child, spec=None):
        """
        Seeded shuffle of the parent, keep `parent_take` pairs, repeat the
        child until the total reaches `total_target`, shuffle the union.
        """
        spec = spec or MixtureSpec()
        if len(child) == 0:
            raise InsufficientDataError('child corpus is empty')
        if len(parent) < spec.parent_take:
            raise InsufficientDataError(
                f'parent corpus has {len(parent)} pairs, {spec.parent_take} requested')

        rng = np.random.Generator(np.random.PCG64(spec.shuffle_seed))
        parent_pairs = parent.pairs()
        taken = [parent_pairs[i] for i in rng.permutation(len(parent))[:spec.parent_take]]

        need = spec.total_target - spec.parent_take
        copies = math.ceil(need / len(child))
        oversampled = (child.pairs() * copies)[:need]

        mixed = taken + oversampled
        mixed = [mixed[i] for i in rng.permutation(len(mixed))]
        logger.info('Mixed %d parent pairs with %d child pairs (%d copies of %d)',
                    len(taken), len(oversampled), copies, len(child))
        return ParallelCorpus(
            sources=[s for s, _ in mixed],
            targets=[t for _, t in mixed],
            src_lang=child.src_lang,
            tgt_lang=child.tgt_lang,
        )

    # ------------------------------------------------------------------
    # Deromanization data-size ablation
    # ------------------------------------------------------------------

    @staticmethod
    def heldout_split(items, heldout=0.1):
        items = list(items)
        n_test = max(1, math.floor(len(items) * heldout))
        if len(items) - n_test < 1:
            raise InsufficientDataError(f'{len(items)} sentences leave nothing to train on')
        return items[:-n_test], items[-n_test:]

    @staticmethod
    def subset_size(fraction, pool_size):
        if not 0 < fraction <= 1:
            raise ConfigurationError(f'fraction {fraction} is outside (0, 1]')
        size = math.floor(fraction * pool_size + 1e-9)
        if size == 0:
            raise ConfigurationError(f'fraction {fraction} of {pool_size} sentences is zero sentences')
        return size

    @staticmethod
    def derom_ablation(corpus, table, mode, fractions, seeds, config=None, heldout=0.1):
        """
        Train and score a deromanizer per (fraction, seed). The final
        `heldout` share of the corpus is the shared test set; each seed
        permutes the remaining pool once, so subsets are nested.
        """
        fractions = list(fractions)
        seeds = list(seeds)
        if not fractions or not seeds:
            return pd.DataFrame(columns=ABLATION_COLUMNS)

        mode = RomanizationMode.parse(mode)
        config = config or DeromanizerConfig()
        pool, test = Pipeline.heldout_split(corpus, heldout)
        sizes = [Pipeline.subset_size(f, len(pool)) for f in fractions]
        test_pairs = Deromanizer.make_training_pairs(test, table, mode)
        pool_pairs = Deromanizer.make_training_pairs(pool, table, mode)

        rows = []
        for seed in seeds:
            order = np.random.Generator(np.random.PCG64(seed)).permutation(len(pool_pairs))
            for fraction, size in zip(fractions, sizes):
                subset = [pool_pairs[i] for i in order[:size]]
                model = Deromanizer.train_deromanizer(subset, config)
                report = Deromanizer.evaluate_deromanization(model, test_pairs)
                rows.append({
                    'fraction': fraction,
                    'seed': seed,
                    'size': size,
                    'chrf': report.score,
                    'bleu': report.extra['bleu'],
                })
                logger.info('Ablation fraction=%s seed=%s size=%d chrF=%.2f',
                            fraction, seed, size, report.score)
        return pd.DataFrame(rows, columns=ABLATION_COLUMNS)

    @staticmethod
    def ablation_summary(frame):
        if frame.empty:
            return pd.DataFrame(columns=['fraction', 'runs', 'size', 'chrf_mean', 'chrf_std'])
        grouped = frame.groupby('fraction', sort=True)
        summary = grouped.agg(
            runs=('seed', 'count'),
            size=('size', 'first'),
            chrf_mean=('chrf', 'mean'),
            chrf_std=('chrf', 'std'),
        ).reset_index()
        summary['chrf_std'] = summary['chrf_std'].fillna(0.0)
        return summary

    # ------------------------------------------------------------------
    # Corpus statistics
    # ------------------------------------------------------------------

    @staticmethod
    def stats_for(corpus, vocab=None):
        corpus = list(corpus)
        avg = BPETrainer.avg_subwords_per_sentence(corpus, vocab) if vocab is not None and corpus else None
        return CorpusStats(
            sentences=len(corpus),
            tokens=Metrics.token_count(corpus),
            types=Metrics.type_count(corpus),
            avg_subwords=avg,
        )

    @staticmethod
    def relative_change(before, after):
        """Percentage change per field; None where the baseline is zero or missing."""
        def change(a, b):
            if a is None or b is None or a == 0:
                return None
            return 100.0 * (b - a) / a

        return {
            'tokens': change(before.tokens, after.tokens),
            'types': change(before.types, after.types),
            'avg_subwords': change(before.avg_subwords, after.avg_subwords),
        }

    @staticmethod
    def corpus_stats(corpus, vocab=None, table=None, romanized_vocab=None):
        """
        Statistics of the corpus and, given a table, of its lossy and
        preserving romanizations. Romanized text is segmented with
        `romanized_vocab` when given, else with `vocab`.
        """
        corpus = list(corpus)
        original = Pipeline.stats_for(corpus, vocab)
        result = {'original': original, 'relative_change': {}}
        if table is None:
            return result

        roman_vocab = romanized_vocab if romanized_vocab is not None else vocab
        for mode in RomanizationMode:
            romanized = [Romanizer.romanize(line, table, mode) for line in corpus]
            stats = Pipeline.stats_for(romanized, roman_vocab)
            result[mode.value] = stats
            result['relative_change'][mode.value] = Pipeline.relative_change(original, stats)
        return result

    @staticmethod
    def stats_frame(result):
        rows = []
        for name, stats in result.items():
            if name == 'relative_change':
                continue
            change = result['relative_change'].get(name, {})
            rows.append({
                'corpus': name,
                **stats.to_dict(),
                'avg_subwords': stats.avg_subwords,
                'tokens_change': change.get('tokens'),
                'types_change': change.get('types'),
                'avg_subwords_change': change.get('avg_subwords'),
            })
        return pd.DataFrame(rows, columns=STATS_COLUMNS)

    @staticmethod
    def stats_to_dict(result, schema_version=1):
        data = {'schema_version': schema_version}
        for name, value in result.items():
            data[name] = value if name == 'relative_change' else value.to_dict()
        return data

    # ------------------------------------------------------------------
    # Reports
    # ------------------------------------------------------------------

    @staticmethod
    def frame_to_tsv(frame, handle=None):
        """Write to `handle`, or return the TSV text when no handle is given."""
        return frame.to_csv(handle, sep='\t', index=False, float_format='%.4f', na_rep='')

    @staticmethod
    def frame_to_dict(frame, name, schema_version=1):
        return {
            'schema_version': schema_version,
            name: json.loads(frame.to_json(orient='records', double_precision=10)),
        }
