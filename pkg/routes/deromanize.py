from flask import Blueprint, current_app, jsonify

from models import CharEncodingConfig
from routes import get_model, json_body
from utils.deromanizer import Deromanizer

deromanize_bp = Blueprint('deromanize', __name__)


def _encoding():
    return CharEncodingConfig(space_sentinel=current_app.config['SPACE_SENTINEL'])


@deromanize_bp.route('/', methods=['POST'])
def deromanize():
    data = json_body('model', 'text')
    model = get_model(data['model'])
    return jsonify({'model': data['model'], 'output': Deromanizer.deromanize(model, data['text'])})


@deromanize_bp.route('/encode', methods=['POST'])
def encode():
    data = json_body('text')
    return jsonify({'output': Deromanizer.encode_chars(data['text'], _encoding())})


@deromanize_bp.route('/decode', methods=['POST'])
def decode():
    data = json_body('text')
    return jsonify({'output': Deromanizer.decode_chars(data['text'], _encoding())})
