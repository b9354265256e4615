from flask import Blueprint, request, jsonify

from api import error_response
from config.settings import get_config
from models.alignment import AlignmentKind
from models.errors import StrembedError
from services.alignment_service import AlignmentService
from services.metrics_service import MetricsService
from utils.text_io import strings_from_payload

# Create Blueprint
metrics_api = Blueprint('metrics_api', __name__, url_prefix='/api/metrics')

# Initialize services
app_config = get_config()
metrics_service = MetricsService(app_config)
alignment_service = AlignmentService()


def _kind(data) -> AlignmentKind:
    try:
        return AlignmentKind(data.get('kind', 'edit'))
    except ValueError:
        raise StrembedError(f"kind must be 'edit' or 'indel', got {data.get('kind')!r}")


@metrics_api.route('/distance', methods=['POST'])
def distance():
    """Edit or indel distance of two strings, optionally normalized"""
    try:
        data = request.get_json(silent=True) or {}
        kind = _kind(data)
        x, y = strings_from_payload(data.get('x'), data.get('y'),
                                    max_length=app_config.API_MAX_INPUT_LENGTH)

        result = {
            'kind': kind.value,
            'distance': metrics_service.distance(kind, x, y),
            'lcs': metrics_service.lcs_length(x, y)
        }
        if data.get('normalized'):
            result['normalized'] = metrics_service.normalized_distance(kind, x, y).to_dict()

        return jsonify({
            'success': True,
            'data': result
        }), 200

    except StrembedError as e:
        return error_response(e, 400)
    except Exception as e:
        return error_response(e, 500)


@metrics_api.route('/alignment', methods=['POST'])
def alignment():
    """An optimal alignment with its cost breakdown"""
    try:
        data = request.get_json(silent=True) or {}
        kind = _kind(data)
        x, y = strings_from_payload(data.get('x'), data.get('y'),
                                    max_length=app_config.API_MAX_INPUT_LENGTH)

        a = metrics_service.optimal_alignment(kind, x, y)
        return jsonify({
            'success': True,
            'data': {
                'alignment': a.to_dict(),
                'cost': alignment_service.cost(a, x, y).to_dict()
            }
        }), 200

    except StrembedError as e:
        return error_response(e, 400)
    except Exception as e:
        return error_response(e, 500)
