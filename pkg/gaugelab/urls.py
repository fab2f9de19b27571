"""
URL configuration for gaugelab project.

The JSON endpoints of the kernel live under ``api/`` in darbouxkit.urls.
"""

from django.urls import include, path

urlpatterns = [
    path("", include("darbouxkit.urls")),
]
