from flask import Flask
import logging
from logging.handlers import RotatingFileHandler
import os


def create_app(config_name='default'):
    """Application factory pattern"""
    from config import config

    app = Flask('vdge')

    # Load configuration
    app.config.from_object(config[config_name])

    # Register CLI commands
    from vdge.commands import experiments
    app.register_blueprint(experiments.bp)

    # Setup logging; service loggers are children of the app logger
    level = getattr(logging, str(app.config['LOG_LEVEL']).upper(), logging.INFO)
    if not app.debug and not app.testing:
        log_dir = app.config['LOG_DIR']
        if not os.path.exists(log_dir):
            os.mkdir(log_dir)
        file_handler = RotatingFileHandler(os.path.join(log_dir, 'vdge.log'),
                                           maxBytes=10240000, backupCount=10)
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s %(levelname)s: %(message)s '
            '[in %(pathname)s:%(lineno)d]'))
        file_handler.setLevel(level)
        app.logger.addHandler(file_handler)

        app.logger.setLevel(level)
        app.logger.info('VDGE startup')
    elif app.debug:
        app.logger.setLevel(logging.DEBUG)

    return app
