import logging

from flask import Flask, jsonify
from flask_cors import CORS
from dotenv import load_dotenv

# Import API blueprints
from api.metrics_api import metrics_api
from api.embedding_api import embedding_api
from config.settings import Config, get_config

# Load environment variables
load_dotenv()

app_config = get_config()
logging.basicConfig(level=getattr(logging, app_config.LOG_LEVEL, logging.WARNING),
                    format=Config.LOG_FORMAT)

app = Flask(__name__)
CORS(app)

# Register blueprints
app.register_blueprint(metrics_api)
app.register_blueprint(embedding_api)


@app.route('/')
def index():
    """Service name and the available endpoints"""
    return jsonify({
        'service': 'strembed',
        'endpoints': {
            'POST /api/metrics/distance': 'edit or indel distance (kind, x, y, normalized)',
            'POST /api/metrics/alignment': 'optimal alignment and cost breakdown (kind, x, y)',
            'POST /api/embeddings/tiskin': 'sentinel-interleaved embedding (x, optional y)',
            'POST /api/embeddings/exact': 'exact indel-to-edit embedding (y, optional x)',
            'POST /api/embeddings/approximate': 'approximate indel-to-edit embedding (y, epsilon, optional x)',
            'POST /api/embeddings/binary': 'binary gadget reduction and LCS recovery (x, y, bits)'
        }
    })


if __name__ == '__main__':
    app.run(debug=app_config.DEBUG, host='0.0.0.0', port=5000)
