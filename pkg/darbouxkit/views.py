import json
import logging

from django.http import JsonResponse
from django.views.decorators.http import require_http_methods

from .exceptions import KernelError
from .utils import (
    METHOD_CHOICES,
    compute_invariants,
    darboux_payload,
    invariants_payload,
    parse_pair,
    parse_quadruple,
)

logger = logging.getLogger(__name__)


def _missing(data, *names):
    return [name for name in names if not isinstance(data.get(name), str) or not data[name].strip()]


@require_http_methods(["POST"])
def invariants_api(request):
    """
    API endpoint computing the generating invariants of (L, M)

    Expected POST data:
    - L: Dx*Dy + a*Dx + b*Dy + c
    - M: mixed-free operator
    - method: bell, omega or both (default bell)
    - order: optional explicit order d
    """
    try:
        data = json.loads(request.body)
        if not isinstance(data, dict):
            return JsonResponse(
                {"success": False, "message": "Expected a JSON object"}, status=400
            )

        missing = _missing(data, "L", "M")
        if missing:
            return JsonResponse(
                {"success": False, "message": f"Missing {', '.join(missing)}"}, status=400
            )

        method = data.get("method", "bell")
        if method not in METHOD_CHOICES:
            return JsonResponse(
                {"success": False, "message": f"Unknown method {method!r}"}, status=400
            )

        order = data.get("order")
        if order is not None and (not isinstance(order, int) or isinstance(order, bool)):
            return JsonResponse(
                {"success": False, "message": "order must be an integer"}, status=400
            )

        laplace, M = parse_pair(data["L"], data["M"], order)
        invariants, agree = compute_invariants(laplace, M, method)
        return JsonResponse({"success": True, "data": invariants_payload(invariants, agree)})

    except json.JSONDecodeError:
        return JsonResponse({"success": False, "message": "Invalid JSON data"}, status=400)

    except KernelError as e:
        logger.info("Rejected invariants request: %s", e)
        return JsonResponse({"success": False, "message": str(e)}, status=400)


@require_http_methods(["POST"])
def verify_darboux_api(request):
    """
    API endpoint checking N∘L = L1∘M

    Expected POST data:
    - N, L, L1, M: operator expressions; L and L1 of principal symbol Dx*Dy
    """
    try:
        data = json.loads(request.body)
        if not isinstance(data, dict):
            return JsonResponse(
                {"success": False, "message": "Expected a JSON object"}, status=400
            )

        missing = _missing(data, "N", "L", "L1", "M")
        if missing:
            return JsonResponse(
                {"success": False, "message": f"Missing {', '.join(missing)}"}, status=400
            )

        quadruple = parse_quadruple(data["N"], data["L"], data["L1"], data["M"])
        return JsonResponse({"success": True, "data": darboux_payload(quadruple)})

    except json.JSONDecodeError:
        return JsonResponse({"success": False, "message": "Invalid JSON data"}, status=400)

    except KernelError as e:
        logger.info("Rejected Darboux request: %s", e)
        return JsonResponse({"success": False, "message": str(e)}, status=400)
