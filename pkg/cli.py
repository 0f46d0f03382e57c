"""
Command-line interface: `python cli.py <command> ...`

Line-oriented commands read standard input and write standard output unless
files are given. Exit codes: 0 success, 1 usage error, 2 data error.
"""

import json
import logging
import sys

import click

from config import get_config
from errors import ReversibilityError, ToolkitError
from models import (
    BleuConfig,
    BootstrapConfig,
    CharEncodingConfig,
    ChrfConfig,
    DeromanizerConfig,
    MixtureSpec,
    RomanizationMode,
    TrainingPair,
)
from utils.deromanizer import Deromanizer, DeromanizerModel
from utils.metrics import Metrics
from utils.pipeline import Pipeline
from utils.romanizer import Romanizer
from utils.subword import BPETrainer
from utils.vocabtransfer import VocabTransfer

logger = logging.getLogger('romtrans')

MODES = click.Choice([m.value for m in RomanizationMode])


def configure_logging(level):
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, str(level).upper(), logging.INFO),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        force=True,
    )


class ToolkitGroup(click.Group):
    """Maps usage errors to exit code 1 and toolkit errors to exit code 2."""

    def main(self, *args, **kwargs):
        kwargs['standalone_mode'] = False
        try:
            rv = super().main(*args, **kwargs)
        except click.UsageError as e:
            e.show()
            sys.exit(1)
        except click.Abort:
            click.echo('Aborted!', err=True)
            sys.exit(1)
        except (ToolkitError, UnicodeDecodeError) as e:
            click.echo(f'Error: {e}', err=True)
            sys.exit(2)
        except click.ClickException as e:
            e.show()
            sys.exit(e.exit_code)
        sys.exit(rv if isinstance(rv, int) else 0)


def emit_json(data, out=None):
    click.echo(json.dumps(data, ensure_ascii=False, sort_keys=True, indent=2), file=out)


def parse_list(raw, cast):
    try:
        return [cast(x) for x in raw.split(',') if x.strip()]
    except ValueError:
        raise click.BadParameter(f'expected a comma-separated list, got {raw!r}')


def load_table(ctx, name):
    return Romanizer.resolve_table(name, ctx.obj.TABLES_DIR)


def require_reversible(table, mode):
    report = Romanizer.is_reversible(table, mode)
    if not report.reversible:
        raise ReversibilityError(f'table {table.name} is not reversible in {mode.value} mode', report.witness)


def read_pairs(handle):
    """(romanized, original) pairs from a two-column TSV stream."""
    pairs = []
    for line_no, line in enumerate(Pipeline.iter_lines(handle), start=1):
        romanized, original = Pipeline.split_tsv_line(line, line_no)
        pairs.append(TrainingPair(romanized=romanized, original=original))
    return pairs


@click.group(cls=ToolkitGroup)
@click.option('--env', default=None, help='Configuration profile (development, production, testing).')
@click.option('--log-level', default=None, help='Override LOG_LEVEL.')
@click.pass_context
def cli(ctx, env, log_level):
    """Romanization, deromanization and vocabulary-transfer toolkit."""
    ctx.obj = get_config(env)
    ctx.meta['env'] = env
    configure_logging(log_level or ctx.obj.LOG_LEVEL)


# ---------------------------------------------------------------------------
# Romanization
# ---------------------------------------------------------------------------

@cli.command()
@click.option('--table', '-t', required=True, help='Shipped table name or TSV path.')
@click.option('--mode', '-m', type=MODES, default=None)
@click.option('--best-effort', is_flag=True, help='Allow a non-reversible table with --check-reversible.')
@click.option('--check-reversible', is_flag=True, help='Refuse tables that cannot be inverted in this mode.')
@click.option('--input', '-i', 'source', type=click.File('r', encoding='utf-8'), default='-')
@click.option('--output', '-o', 'sink', type=click.File('w', encoding='utf-8'), default='-')
@click.pass_context
def romanize(ctx, table, mode, best_effort, check_reversible, source, sink):
    """Romanize one sentence per line."""
    table = load_table(ctx, table)
    mode = RomanizationMode.parse(mode or ctx.obj.DEFAULT_MODE)
    if check_reversible:
        if best_effort:
            report = Romanizer.is_reversible(table, mode)
            if not report.reversible:
                logger.warning('Table %s is not reversible in %s mode (witness %r)',
                               table.name, mode.value, report.witness)
        else:
            require_reversible(table, mode)
    for line in Pipeline.iter_lines(source):
        sink.write(Romanizer.romanize(line, table, mode) + '\n')


@cli.command('check-table')
@click.option('--table', '-t', required=True)
@click.pass_context
def check_table(ctx, table):
    """Load a table and report reversibility in both modes."""
    table = load_table(ctx, table)
    emit_json({
        'table': table.name,
        'entries': len(table),
        'passthrough': table.passthrough_policy.value,
        'modes': {m.value: Romanizer.is_reversible(table, m).to_dict() for m in RomanizationMode},
    })


# ---------------------------------------------------------------------------
# Deromanization
# ---------------------------------------------------------------------------

@cli.command()
@click.option('--model', 'model_path', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Learned model; without it the table is inverted rule by rule.')
@click.option('--table', '-t', default=None)
@click.option('--mode', '-m', type=MODES, default=None)
@click.option('--best-effort', is_flag=True)
@click.option('--input', '-i', 'source', type=click.File('r', encoding='utf-8'), default='-')
@click.option('--output', '-o', 'sink', type=click.File('w', encoding='utf-8'), default='-')
@click.pass_context
def deromanize(ctx, model_path, table, mode, best_effort, source, sink):
    """Map romanized lines back to the original script."""
    if model_path:
        model = DeromanizerModel.load(model_path)
        convert = lambda line: Deromanizer.deromanize(model, line)  # noqa: E731
    elif table:
        table = load_table(ctx, table)
        mode = RomanizationMode.parse(mode or ctx.obj.DEFAULT_MODE)
        if not best_effort:
            require_reversible(table, mode)
        convert = lambda line: Romanizer.deromanize_rule_based(line, table, mode, best_effort)  # noqa: E731
    else:
        raise click.UsageError('give --model or --table')
    for line in Pipeline.iter_lines(source):
        sink.write(convert(line) + '\n')


@cli.command('derom-train')
@click.option('--table', '-t', required=True)
@click.option('--mode', '-m', type=MODES, default=None)
@click.option('--in', 'source', type=click.File('r', encoding='utf-8'), default='-',
              help='Original-script corpus, one sentence per line.')
@click.option('--out', 'out_path', required=True, type=click.Path(dir_okay=False))
@click.option('--k', type=int, default=None, help='Character LM order.')
@click.option('--alpha', type=float, default=None)
@click.option('--lm-weight', type=float, default=None)
@click.option('--beam', type=int, default=None)
@click.pass_context
def derom_train(ctx, table, mode, source, out_path, k, alpha, lm_weight, beam):
    """Train a deromanizer from an original-script corpus."""
    cfg = ctx.obj
    table = load_table(ctx, table)
    mode = RomanizationMode.parse(mode or cfg.DEFAULT_MODE)
    config = DeromanizerConfig(
        k=k or cfg.DEROM_LM_ORDER,
        alpha=alpha or cfg.DEROM_ALPHA,
        lm_weight=cfg.DEROM_LM_WEIGHT if lm_weight is None else lm_weight,
        beam=beam or cfg.DEROM_BEAM,
        max_length=cfg.DEROM_MAX_LENGTH,
    )
    pairs = Deromanizer.make_training_pairs(Pipeline.iter_lines(source), table, mode)
    model = Deromanizer.train_deromanizer(pairs, config, table, mode)
    model.save(out_path)
    click.echo(f'Saved deromanizer with {len(model.codewords)} codewords to {out_path}', err=True)


@cli.command('derom-eval')
@click.option('--model', 'model_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--test', 'test_file', required=True, type=click.File('r', encoding='utf-8'),
              help='TSV of romanized<TAB>original lines.')
@click.option('--baseline-table', default=None, help='Also score the rule-based inverse of this table.')
@click.option('--mode', '-m', type=MODES, default=None)
@click.option('--json', 'as_json', is_flag=True)
@click.pass_context
def derom_eval(ctx, model_path, test_file, baseline_table, mode, as_json):
    """chrF (and BLEU) of a learned deromanizer on held-out pairs."""
    cfg = ctx.obj
    chrf_config = ChrfConfig(max_n=cfg.CHRF_ORDER, beta=cfg.CHRF_BETA)
    pairs = read_pairs(test_file)
    model = DeromanizerModel.load(model_path)
    report = Deromanizer.evaluate_deromanization(model, pairs, chrf_config)
    baseline = None
    if baseline_table:
        table = load_table(ctx, baseline_table)
        baseline = Deromanizer.evaluate_rule_based(
            pairs, table, RomanizationMode.parse(mode or cfg.DEFAULT_MODE), chrf_config)

    if as_json:
        data = {'learned': report.to_dict(cfg.REPORT_SCHEMA_VERSION)}
        if baseline is not None:
            data['rule_based'] = baseline.to_dict(cfg.REPORT_SCHEMA_VERSION)
        emit_json(data)
        return
    click.echo(f'chrF\t{report.score:.2f}\nBLEU\t{report.extra["bleu"]:.2f}')
    if baseline is not None:
        click.echo(f'rule-based chrF\t{baseline.score:.2f}')


@cli.command('derom-encode')
@click.option('--input', '-i', 'source', type=click.File('r', encoding='utf-8'), default='-')
@click.option('--output', '-o', 'sink', type=click.File('w', encoding='utf-8'), default='-')
@click.pass_context
def derom_encode(ctx, source, sink):
    """Space-separate characters, spaces become the sentinel."""
    enc = CharEncodingConfig(space_sentinel=ctx.obj.SPACE_SENTINEL)
    for line in Pipeline.iter_lines(source):
        sink.write(Deromanizer.encode_chars(line, enc) + '\n')


@cli.command('derom-decode')
@click.option('--input', '-i', 'source', type=click.File('r', encoding='utf-8'), default='-')
@click.option('--output', '-o', 'sink', type=click.File('w', encoding='utf-8'), default='-')
@click.pass_context
def derom_decode(ctx, source, sink):
    enc = CharEncodingConfig(space_sentinel=ctx.obj.SPACE_SENTINEL)
    for line in Pipeline.iter_lines(source):
        sink.write(Deromanizer.decode_chars(line, enc) + '\n')


# ---------------------------------------------------------------------------
# Subword vocabularies
# ---------------------------------------------------------------------------

@cli.command('bpe-train')
@click.option('--size', type=int, default=None,
              help='Vocabulary size (defaults to PARENT_VOCAB_SIZE, or CHILD_VOCAB_SIZE with --child).')
@click.option('--child', is_flag=True, help='Size the vocabulary for a low-resource child corpus.')
@click.option('--coverage', type=float, default=None, help='Character coverage (defaults to BPE_COVERAGE).')
@click.option('--min-frequency', type=int, default=None,
              help='Minimum pair count for a merge (default 2). Use 1 to merge pairs seen once, '
                   'e.g. for a single-word corpus.')
@click.option('--in', 'source', type=click.File('r', encoding='utf-8'), default='-')
@click.option('--out', 'out_path', required=True, type=click.Path(dir_okay=False))
@click.pass_context
def bpe_train(ctx, size, child, coverage, min_frequency, source, out_path):
    cfg = ctx.obj
    if size is None:
        size = cfg.CHILD_VOCAB_SIZE if child else cfg.PARENT_VOCAB_SIZE
    vocab = BPETrainer.train_bpe(
        Pipeline.iter_lines(source),
        size=size,
        coverage=cfg.BPE_COVERAGE if coverage is None else coverage,
        min_frequency=cfg.BPE_MIN_FREQUENCY if min_frequency is None else min_frequency,
    )
    BPETrainer.save(vocab, out_path)
    click.echo(f'Saved {len(vocab)} pieces to {out_path}', err=True)


@cli.command('bpe-segment')
@click.option('--vocab', 'vocab_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--ids', is_flag=True, help='Print piece ids instead of pieces.')
@click.option('--input', '-i', 'source', type=click.File('r', encoding='utf-8'), default='-')
@click.option('--output', '-o', 'sink', type=click.File('w', encoding='utf-8'), default='-')
def bpe_segment(vocab_path, ids, source, sink):
    vocab = BPETrainer.load(vocab_path)
    for line in Pipeline.iter_lines(source):
        if ids:
            sink.write(' '.join(str(i) for i in BPETrainer.segment(line, vocab)) + '\n')
        else:
            sink.write(' '.join(BPETrainer.segment_pieces(line, vocab)) + '\n')


@cli.command('bpe-stats')
@click.option('--in', 'source', type=click.File('r', encoding='utf-8'), default='-')
@click.option('--vocab', 'vocab_path', type=click.Path(exists=True, dir_okay=False), default=None)
@click.option('--romanized-vocab', 'romanized_vocab_path', type=click.Path(exists=True, dir_okay=False),
              default=None, help='Vocabulary for the romanized text (defaults to --vocab).')
@click.option('--table', '-t', default=None)
@click.option('--json', 'as_json', is_flag=True)
@click.pass_context
def bpe_stats(ctx, source, vocab_path, romanized_vocab_path, table, as_json):
    """Sentences, tokens, types and subwords per sentence, before and after romanization."""
    vocab = BPETrainer.load(vocab_path) if vocab_path else None
    romanized_vocab = BPETrainer.load(romanized_vocab_path) if romanized_vocab_path else None
    table = load_table(ctx, table) if table else None
    result = Pipeline.corpus_stats(list(Pipeline.iter_lines(source)), vocab, table, romanized_vocab)
    if as_json:
        emit_json(Pipeline.stats_to_dict(result, ctx.obj.REPORT_SCHEMA_VERSION))
    else:
        click.echo(Pipeline.frame_to_tsv(Pipeline.stats_frame(result)), nl=False)


# ---------------------------------------------------------------------------
# Vocabulary transfer
# ---------------------------------------------------------------------------

@cli.command('transfer-vocab')
@click.option('--parent', 'parent_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--child', 'child_path', type=click.Path(exists=True, dir_okay=False), default=None)
@click.option('--child-corpus', type=click.File('r', encoding='utf-8'), default=None,
              help='Reuse the parent vocabulary for this corpus instead of merging a child vocabulary.')
@click.option('--patch', is_flag=True, help='With --child-corpus, place unseen pieces on unused positions.')
@click.option('--seed', type=int, default=0)
@click.option('--out', 'out_path', required=True, type=click.Path(dir_okay=False))
def transfer_vocab(parent_path, child_path, child_corpus, patch, seed, out_path):
    parent = BPETrainer.load(parent_path)
    if child_path:
        report = VocabTransfer.transfer_vocab(parent, BPETrainer.load(child_path), seed)
    elif child_corpus:
        report = VocabTransfer.reuse_parent_vocab(parent, Pipeline.iter_lines(child_corpus))
        if patch:
            report = VocabTransfer.patch_unseen_pieces(parent, report, seed)
    else:
        raise click.UsageError('give --child or --child-corpus')
    VocabTransfer.save_report(report, out_path)
    click.echo(f'{report.matched_count} matched, {report.replaced_count} replaced, '
               f'{len(report.unmatched)} unmatched', err=True)


@cli.command('remap-embeddings')
@click.option('--embeddings', 'embeddings_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--report', 'report_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--child', 'child_path', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Child vocabulary; rows are written in its id order.')
@click.option('--out', 'out_path', required=True, type=click.Path(dir_okay=False))
@click.option('--map-out', type=click.Path(dir_okay=False), default=None, help='Write the child piece -> row map.')
def remap_embeddings(embeddings_path, report_path, child_path, out_path, map_out):
    rows = VocabTransfer.load_embeddings(embeddings_path)
    report = VocabTransfer.load_report(report_path)
    child = BPETrainer.load(child_path) if child_path else None
    _, child_map = VocabTransfer.remap_embeddings(rows, report)
    VocabTransfer.save_embeddings(VocabTransfer.child_embedding_matrix(rows, report, child), out_path)
    if map_out:
        with open(map_out, 'w', encoding='utf-8') as handle:
            json.dump(child_map, handle, ensure_ascii=False, indent=1)


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

@cli.command()
@click.argument('metric', type=click.Choice(['chrf', 'bleu']))
@click.option('--hyp', required=True, type=click.File('r', encoding='utf-8'))
@click.option('--ref', required=True, type=click.File('r', encoding='utf-8'))
@click.option('--tokenizer', type=click.Choice(['13a', 'none']), default='13a')
@click.option('--json', 'as_json', is_flag=True)
@click.pass_context
def score(ctx, metric, hyp, ref, tokenizer, as_json):
    """Corpus chrF or BLEU of hypotheses against references."""
    cfg = ctx.obj
    hyps = list(Pipeline.iter_lines(hyp))
    refs = list(Pipeline.iter_lines(ref))
    if metric == 'chrf':
        chrf_config = ChrfConfig(max_n=cfg.CHRF_ORDER, beta=cfg.CHRF_BETA)
        value = Metrics.chrf(hyps, refs, chrf_config)
        extra = {'per_sentence': Metrics.sentence_chrf(hyps, refs, chrf_config)}
    else:
        bleu_config = BleuConfig(max_n=cfg.BLEU_ORDER, tokenizer=tokenizer)
        value = Metrics.bleu(hyps, refs, bleu_config)
        extra = {'signature': bleu_config.signature}
    if as_json:
        emit_json({'schema_version': cfg.REPORT_SCHEMA_VERSION, 'metric': metric, 'score': value,
                   'n_sentences': len(hyps), **extra})
    else:
        click.echo(f'{value:.2f}')


@cli.command()
@click.option('--sys-a', required=True, type=click.File('r', encoding='utf-8'))
@click.option('--sys-b', required=True, type=click.File('r', encoding='utf-8'))
@click.option('--ref', required=True, type=click.File('r', encoding='utf-8'))
@click.option('--metric', type=click.Choice(['chrf', 'bleu']), default='chrf')
@click.option('--samples', type=int, default=None)
@click.option('--alpha', type=float, default=None)
@click.option('--seed', type=int, default=None)
@click.pass_context
def bootstrap(ctx, sys_a, sys_b, ref, metric, samples, alpha, seed):
    """Paired bootstrap resampling between two systems."""
    cfg = ctx.obj
    config = BootstrapConfig(
        samples=samples or cfg.BOOTSTRAP_SAMPLES,
        alpha=alpha or cfg.BOOTSTRAP_ALPHA,
        seed=cfg.BOOTSTRAP_SEED if seed is None else seed,
    )
    result = Metrics.paired_bootstrap(
        list(Pipeline.iter_lines(sys_a)), list(Pipeline.iter_lines(sys_b)), list(Pipeline.iter_lines(ref)),
        metric, config,
        chrf_config=ChrfConfig(max_n=cfg.CHRF_ORDER, beta=cfg.CHRF_BETA),
        bleu_config=BleuConfig(max_n=cfg.BLEU_ORDER),
    )
    emit_json({'schema_version': cfg.REPORT_SCHEMA_VERSION, 'metric': metric, **result.to_dict()})


@cli.command()
@click.argument('kind', type=click.Choice(['types', 'overlap', 'corpus']))
@click.option('--in', 'source', type=click.File('r', encoding='utf-8'), default='-')
@click.option('--ref', type=click.File('r', encoding='utf-8'), default=None, help='Reference corpus for overlap.')
@click.option('--vocab', 'vocab_path', type=click.Path(exists=True, dir_okay=False), default=None)
@click.option('--table', '-t', default=None)
@click.pass_context
def stats(ctx, kind, source, ref, vocab_path, table):
    """Type counts, character overlap (chrF) or full corpus statistics."""
    cfg = ctx.obj
    lines = list(Pipeline.iter_lines(source))
    if kind == 'types':
        click.echo(str(Metrics.type_count(lines)))
    elif kind == 'overlap':
        if ref is None:
            raise click.UsageError('overlap needs --ref')
        overlap = Metrics.char_overlap(lines, list(Pipeline.iter_lines(ref)),
                                       ChrfConfig(max_n=cfg.CHRF_ORDER, beta=cfg.CHRF_BETA))
        click.echo(f'{overlap:.2f}')
    else:
        vocab = BPETrainer.load(vocab_path) if vocab_path else None
        result = Pipeline.corpus_stats(lines, vocab, load_table(ctx, table) if table else None)
        emit_json(Pipeline.stats_to_dict(result, cfg.REPORT_SCHEMA_VERSION))


# ---------------------------------------------------------------------------
# Corpus preparation and experiments
# ---------------------------------------------------------------------------

@cli.command()
@click.option('--lang', required=True, help='Target language code for the <2xx> tag.')
@click.option('--tsv', is_flag=True, help='Input is source<TAB>target; only the source column is tagged.')
@click.option('--input', '-i', 'source', type=click.File('r', encoding='utf-8'), default='-')
@click.option('--output', '-o', 'sink', type=click.File('w', encoding='utf-8'), default='-')
def tag(lang, tsv, source, sink):
    """Prepend the target-language token to every source line."""
    Pipeline.language_tag(lang)
    for line_no, line in enumerate(Pipeline.iter_lines(source), start=1):
        if tsv:
            src, tgt = Pipeline.split_tsv_line(line, line_no)
            sink.write(f'{Pipeline.tag_line(src, lang)}\t{tgt}\n')
        else:
            sink.write(Pipeline.tag_line(line, lang) + '\n')


@cli.command()
@click.option('--parent', 'parent_path', required=True, type=click.Path(exists=True, dir_okay=False),
              help='Parent pairs as TSV.')
@click.option('--child', 'child_path', required=True, type=click.Path(exists=True, dir_okay=False),
              help='Child pairs as TSV.')
@click.option('--parent-take', type=int, default=None)
@click.option('--total', type=int, default=None)
@click.option('--seed', type=int, default=0)
@click.option('--out', 'out_path', required=True, type=click.Path(dir_okay=False))
@click.pass_context
def mix(ctx, parent_path, child_path, parent_take, total, seed, out_path):
    """Finetuning mixture: parent sample plus oversampled child data."""
    cfg = ctx.obj
    spec = MixtureSpec(
        parent_take=cfg.MIX_PARENT_TAKE if parent_take is None else parent_take,
        total_target=total or cfg.MIX_TOTAL_TARGET,
        shuffle_seed=seed,
    )
    mixed = Pipeline.mix_corpora(Pipeline.read_parallel(parent_path), Pipeline.read_parallel(child_path), spec)
    Pipeline.write_parallel(mixed, out_path)
    click.echo(f'Wrote {len(mixed)} pairs to {out_path}', err=True)


@cli.command()
@click.option('--in', 'source', type=click.File('r', encoding='utf-8'), default='-',
              help='Original-script corpus.')
@click.option('--table', '-t', required=True)
@click.option('--mode', '-m', type=MODES, default=None)
@click.option('--fractions', default=None, help='Comma-separated training fractions.')
@click.option('--seeds', default='1,2,3,4,5', help='Comma-separated seeds.')
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), default=None, help='Rows TSV (stdout if omitted).')
@click.option('--summary', 'summary_path', type=click.Path(dir_okay=False), default=None)
@click.option('--json', 'as_json', is_flag=True)
@click.pass_context
def ablate(ctx, source, table, mode, fractions, seeds, out_path, summary_path, as_json):
    """Deromanization quality as a function of training-data size."""
    cfg = ctx.obj
    fractions = parse_list(fractions, float) if fractions else list(cfg.ABLATION_FRACTIONS)
    seeds = parse_list(seeds, int)
    frame = Pipeline.derom_ablation(
        list(Pipeline.iter_lines(source)),
        load_table(ctx, table),
        RomanizationMode.parse(mode or cfg.DEFAULT_MODE),
        fractions, seeds,
        DeromanizerConfig.from_config(cfg),
        cfg.ABLATION_HELDOUT,
    )
    summary = Pipeline.ablation_summary(frame)

    if as_json:
        data = Pipeline.frame_to_dict(frame, 'rows', cfg.REPORT_SCHEMA_VERSION)
        data['summary'] = Pipeline.frame_to_dict(summary, 'rows')['rows']
        emit_json(data)
    elif out_path:
        with open(out_path, 'w', encoding='utf-8', newline='') as handle:
            Pipeline.frame_to_tsv(frame, handle)
    else:
        click.echo(Pipeline.frame_to_tsv(frame), nl=False)
    if summary_path:
        with open(summary_path, 'w', encoding='utf-8', newline='') as handle:
            Pipeline.frame_to_tsv(summary, handle)


@cli.command()
@click.option('--host', default='127.0.0.1')
@click.option('--port', type=int, default=5000)
@click.pass_context
def serve(ctx, host, port):
    """Run the JSON API."""
    from app import create_app

    create_app(ctx.meta.get('env')).run(host=host, port=port, debug=getattr(ctx.obj, 'DEBUG', False))


if __name__ == '__main__':
    cli(prog_name='romtrans')
