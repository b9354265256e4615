from flask import Blueprint, request, jsonify

from api import error_response
from config.settings import get_config
from models.errors import StrembedError
from services.gadget_service import GadgetService
from services.indel_edit_service import IndelEditService, apx_block_length
from services.metrics_service import MetricsService
from utils.text_io import parse_fraction, strings_from_payload

# Create Blueprint
embedding_api = Blueprint('embedding_api', __name__, url_prefix='/api/embeddings')

# Initialize services
app_config = get_config()
metrics_service = MetricsService(app_config)
indel_edit_service = IndelEditService(metrics_service)
gadget_service = GadgetService(app_config, metrics_service)


def _inputs(data, *keys):
    return strings_from_payload(*(data.get(key) for key in keys),
                                max_length=app_config.API_MAX_INPUT_LENGTH)


@embedding_api.route('/tiskin', methods=['POST'])
def tiskin():
    """Sentinel-interleaved embedding of x; with y also the recovered edit distance"""
    try:
        data = request.get_json(silent=True) or {}
        keys = ('x', 'y') if data.get('y') is not None else ('x',)
        strings = _inputs(data, *keys)

        result = {'embedded': [indel_edit_service.tiskin_embed(s).text() for s in strings]}
        if len(strings) == 2:
            result['edit_distance'] = indel_edit_service.edit_via_indel(*strings)
        return jsonify({'success': True, 'data': result}), 200

    except StrembedError as e:
        return error_response(e, 400)
    except Exception as e:
        return error_response(e, 500)


@embedding_api.route('/exact', methods=['POST'])
def exact():
    """Exact indel-to-edit embedding of y"""
    try:
        data = request.get_json(silent=True) or {}
        keys = ('x', 'y') if data.get('x') is not None else ('y',)
        strings = _inputs(data, *keys)
        y = strings[-1]

        padded = indel_edit_service.embed_exact(y)
        result = {'embedded': padded.text(), 'N': len(padded), 'n': len(y)}
        if len(strings) == 2:
            result['indel_distance'] = indel_edit_service.indel_via_exact_embedding(*strings)
        return jsonify({'success': True, 'data': result}), 200

    except StrembedError as e:
        return error_response(e, 400)
    except Exception as e:
        return error_response(e, 500)


@embedding_api.route('/approximate', methods=['POST'])
def approximate():
    """Approximate indel-to-edit embedding of y for a given epsilon"""
    try:
        data = request.get_json(silent=True) or {}
        epsilon = parse_fraction(data.get('epsilon', 1))
        keys = ('x', 'y') if data.get('x') is not None else ('y',)
        strings = _inputs(data, *keys)
        y = strings[-1]

        padded = indel_edit_service.embed_apx(y, epsilon)
        result = {
            'embedded': padded.text(),
            'N': len(padded),
            'n': len(y),
            'k': apx_block_length(epsilon),
            'epsilon': str(epsilon)
        }
        if len(strings) == 2:
            window = indel_edit_service.apx_distance_window(*strings, epsilon)
            result['window'] = {key: str(value) if key in ('low', 'high') else value
                                for key, value in window.items()}
        return jsonify({'success': True, 'data': result}), 200

    except StrembedError as e:
        return error_response(e, 400)
    except Exception as e:
        return error_response(e, 500)


@embedding_api.route('/binary', methods=['POST'])
def binary():
    """Binary gadget strings G, H for x, y and the LCS recovered from them"""
    try:
        data = request.get_json(silent=True) or {}
        x, y = _inputs(data, 'x', 'y')
        bits = data.get('bits')

        result = gadget_service.binary_reduce_and_recover(x, y, int(bits) if bits is not None else None)
        G, H = result.pop('G'), result.pop('H')
        result.update({'G': G.text(), 'H': H.text()})
        return jsonify({'success': True, 'data': result}), 200

    except (StrembedError, ValueError) as e:
        return error_response(e, 400)
    except Exception as e:
        return error_response(e, 500)
