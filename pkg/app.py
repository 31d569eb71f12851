#!/usr/bin/env python3
"""Main application entry point: `python app.py <command>` or `flask --app app <command>`"""

import os
from dotenv import load_dotenv
from flask.cli import FlaskGroup
from vdge import create_app

# Load environment variables from .env file
load_dotenv()

# Get configuration from environment
config_name = os.getenv('VDGE_ENV', 'development')

# Create application
app = create_app(config_name)

cli = FlaskGroup(create_app=lambda: app, add_default_commands=False,
                 help='Variational estimation of the geometric measure of entanglement')

if __name__ == '__main__':
    cli()
