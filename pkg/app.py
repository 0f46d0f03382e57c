import logging
import os

from flask import Flask, jsonify
from werkzeug.exceptions import HTTPException

from config import config
from errors import ToolkitError
from utils.romanizer import Romanizer


def create_app(env=None):
    app = Flask(__name__)

    # Load configuration
    env = env or os.environ.get('ROMTRANS_ENV', 'default')
    app.config.from_object(config.get(env, config['default']))
    app.json.sort_keys = app.config['JSON_SORT_KEYS']
    app.logger.setLevel(getattr(logging, str(app.config['LOG_LEVEL']).upper(), logging.INFO))

    # Tables and models are immutable once loaded; one copy per process
    app.extensions['romtrans'] = {'tables': {}, 'models': {}}

    # Register blueprints
    from routes.romanize import romanize_bp
    from routes.deromanize import deromanize_bp
    from routes.metrics import metrics_bp

    app.register_blueprint(romanize_bp, url_prefix='/romanize')
    app.register_blueprint(deromanize_bp, url_prefix='/deromanize')
    app.register_blueprint(metrics_bp, url_prefix='/metrics')

    # Main routes
    @app.route('/')
    def index():
        return jsonify({
            'app_name': app.config['APP_NAME'],
            'app_version': app.config['APP_VERSION'],
            'tables': Romanizer.available_tables(app.config['TABLES_DIR']),
        })

    # Error handlers
    @app.errorhandler(ToolkitError)
    def toolkit_error(error):
        app.logger.info('Rejected request: %s', error)
        return jsonify({'error': type(error).__name__, 'message': str(error)}), 422

    @app.errorhandler(HTTPException)
    def http_error(error):
        return jsonify({'error': error.name, 'message': error.description}), error.code

    @app.errorhandler(500)
    def internal_error(error):
        app.logger.exception('Unhandled error')
        return jsonify({'error': 'Internal Server Error', 'message': 'unexpected failure'}), 500

    return app


app = create_app()


if __name__ == '__main__':
    app.run(debug=app.config.get('DEBUG', False), host='127.0.0.1', port=5000)
