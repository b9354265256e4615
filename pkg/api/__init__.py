from flask import jsonify


def error_response(e: Exception, status: int):
    """Failure envelope shared by the blueprints"""
    return jsonify({
        'success': False,
        'error': str(e)
    }), status
