import os

from flask import current_app, request
from werkzeug.exceptions import BadRequest

from errors import ToolkitError
from utils.deromanizer import DeromanizerModel
from utils.romanizer import Romanizer


def json_body(*required):
    """Request JSON object; 400 when it is missing or lacks a required field."""
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise BadRequest('request body must be a JSON object')
    missing = [name for name in required if name not in data]
    if missing:
        raise BadRequest(f'missing field(s): {", ".join(missing)}')
    return data


def get_table(name):
    """Shipped table by name, cached on the running app."""
    if not isinstance(name, str):
        raise BadRequest('table must be a string')
    tables = current_app.extensions['romtrans']['tables']
    if name not in tables:
        tables[name] = Romanizer.resolve_table(name, current_app.config['TABLES_DIR'], shipped_only=True)
    return tables[name]


def get_model(name):
    """Trained deromanizer `<name>.json` from MODELS_DIR, cached on the running app."""
    models = current_app.extensions['romtrans']['models']
    if name not in models:
        models_dir = current_app.config['MODELS_DIR']
        path = os.path.join(models_dir, os.path.basename(name) + '.json')
        if not os.path.isfile(path):
            raise ToolkitError(f'no deromanizer model named {name!r} in {models_dir}')
        models[name] = DeromanizerModel.load(path)
        current_app.logger.info('Loaded deromanizer model %s', path)
    return models[name]
