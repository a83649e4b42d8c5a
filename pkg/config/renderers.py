"""
Custom renderers for the phase-factor engine.
"""
from rest_framework.renderers import JSONRenderer


class StandardJSONRenderer(JSONRenderer):
    """
    JSON renderer that wraps command output in a standard format.
    """
    def render(self, data, accepted_media_type=None, renderer_context=None):
        renderer_context = renderer_context or {}

        # If data is already in standard format, don't wrap it again
        if isinstance(data, dict) and 'code' in data and 'message' in data:
            return super().render(data, accepted_media_type, renderer_context)

        exit_code = renderer_context.get('exit_code', 0)

        if exit_code:
            wrapped_data = {
                'code': exit_code,
                'message': data.get('detail', '执行失败') if isinstance(data, dict) else '执行失败',
                'errors': data if isinstance(data, dict) else {}
            }
        else:
            wrapped_data = {
                'code': 0,
                'message': 'success',
                'data': data
            }

        return super().render(wrapped_data, accepted_media_type, renderer_context)


def render_json(data, exit_code=0):
    """Render a payload to UTF-8 text with the standard wrapper."""
    content = StandardJSONRenderer().render(data, renderer_context={'exit_code': exit_code})
    return content.decode('utf-8')
