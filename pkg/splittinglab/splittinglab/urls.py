"""URL configuration for the splittinglab project."""

from django.contrib import admin
from django.urls import URLPattern, URLResolver, path
from lab.api import api as lab_api

URLPatternsList = list[URLPattern | URLResolver]

urlpatterns: URLPatternsList = [
    path("admin/", admin.site.urls),
    path("api/", lab_api.urls),
]
