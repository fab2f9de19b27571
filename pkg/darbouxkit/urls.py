from django.urls import path

from . import views

urlpatterns = [
    path("api/invariants/", views.invariants_api, name="invariants_api"),
    path("api/verify-darboux/", views.verify_darboux_api, name="verify_darboux_api"),
]
