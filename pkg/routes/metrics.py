from flask import Blueprint, current_app, jsonify

from models import BleuConfig, BootstrapConfig, ChrfConfig
from routes import json_body
from utils.metrics import Metrics

metrics_bp = Blueprint('metrics', __name__)


def _chrf_config():
    return ChrfConfig(max_n=current_app.config['CHRF_ORDER'], beta=current_app.config['CHRF_BETA'])


def _bleu_config(data):
    return BleuConfig(
        max_n=current_app.config['BLEU_ORDER'],
        tokenizer=data.get('tokenizer', '13a'),
        effective_order=bool(data.get('effective_order', False)),
    )


@metrics_bp.route('/chrf', methods=['POST'])
def chrf():
    """Corpus chrF plus per-sentence scores for parallel `hyps` / `refs` lists."""
    data = json_body('hyps', 'refs')
    cfg = _chrf_config()
    return jsonify({
        'metric': 'chrf',
        'score': Metrics.chrf(data['hyps'], data['refs'], cfg),
        'per_sentence': Metrics.sentence_chrf(data['hyps'], data['refs'], cfg),
    })


@metrics_bp.route('/bleu', methods=['POST'])
def bleu():
    data = json_body('hyps', 'refs')
    cfg = _bleu_config(data)
    return jsonify({
        'metric': 'bleu',
        'score': Metrics.bleu(data['hyps'], data['refs'], cfg),
        'signature': cfg.signature,
    })


@metrics_bp.route('/bootstrap', methods=['POST'])
def bootstrap():
    data = json_body('sys_a', 'sys_b', 'refs')
    cfg = BootstrapConfig(
        samples=int(data.get('samples', current_app.config['BOOTSTRAP_SAMPLES'])),
        alpha=float(data.get('alpha', current_app.config['BOOTSTRAP_ALPHA'])),
        seed=int(data.get('seed', current_app.config['BOOTSTRAP_SEED'])),
    )
    metric = data.get('metric', 'chrf')
    result = Metrics.paired_bootstrap(data['sys_a'], data['sys_b'], data['refs'], metric, cfg,
                                      chrf_config=_chrf_config(), bleu_config=_bleu_config(data))
    current_app.logger.info('Bootstrap %s over %d segments', metric, len(data['refs']))
    return jsonify({'metric': metric, **result.to_dict()})


@metrics_bp.route('/types', methods=['POST'])
def types():
    data = json_body('lines')
    return jsonify({
        'sentences': len(data['lines']),
        'tokens': Metrics.token_count(data['lines']),
        'types': Metrics.type_count(data['lines']),
    })
