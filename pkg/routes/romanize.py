from flask import Blueprint, current_app, jsonify

from models import RomanizationMode
from routes import get_table, json_body
from utils.romanizer import Romanizer

romanize_bp = Blueprint('romanize', __name__)


def _mode(data):
    return RomanizationMode.parse(data.get('mode') or current_app.config['DEFAULT_MODE'])


@romanize_bp.route('/', methods=['POST'])
def romanize():
    """Romanize `text` or a list of `lines` with a shipped table."""
    data = json_body('table')
    table = get_table(data['table'])
    mode = _mode(data)

    if 'lines' in data:
        lines = [Romanizer.romanize(line, table, mode) for line in data['lines']]
        return jsonify({'table': table.name, 'mode': mode.value, 'lines': lines})

    output = Romanizer.romanize(data.get('text', ''), table, mode)
    return jsonify({'table': table.name, 'mode': mode.value, 'output': output})


@romanize_bp.route('/reversible', methods=['POST'])
def reversible():
    data = json_body('table')
    table = get_table(data['table'])
    mode = _mode(data)
    report = Romanizer.is_reversible(table, mode)
    return jsonify({'table': table.name, 'mode': mode.value, **report.to_dict()})


@romanize_bp.route('/derom', methods=['POST'])
def derom():
    """Rule-based inverse; best_effort allows non-reversible tables."""
    data = json_body('table', 'text')
    table = get_table(data['table'])
    mode = _mode(data)
    output = Romanizer.deromanize_rule_based(data['text'], table, mode,
                                             best_effort=bool(data.get('best_effort', False)))
    return jsonify({'table': table.name, 'mode': mode.value, 'output': output})
