"""Tracing of library builds.

Builds open one span per graph size. Nothing is exported unless
``OTEL_ENABLED`` is set.
"""

import logging

from opentelemetry import trace
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor, ConsoleSpanExporter, SpanExporter
from opentelemetry.sdk.trace.sampling import (
    ALWAYS_OFF,
    ALWAYS_ON,
    ParentBased,
    Sampler,
    TraceIdRatioBased,
)

from regular_graph_library import __version__
from regular_graph_library.config import Settings, get_settings

logger = logging.getLogger(__name__)

_provider: TracerProvider | None = None


def _sampler(name: str, ratio: float) -> Sampler:
    root: Sampler
    if name.endswith("always_off"):
        root = ALWAYS_OFF
    elif name.endswith("traceidratio"):
        root = TraceIdRatioBased(ratio)
    else:
        root = ALWAYS_ON
    return ParentBased(root) if name.startswith("parentbased_") else root


def _exporter(settings: Settings) -> SpanExporter:
    if settings.otel_exporter_type == "otlp":
        from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter

        return OTLPSpanExporter(endpoint=settings.otel_exporter_otlp_endpoint)
    if settings.otel_exporter_type == "otlp-http":
        from opentelemetry.exporter.otlp.proto.http.trace_exporter import (
            OTLPSpanExporter as HTTPSpanExporter,
        )

        return HTTPSpanExporter(endpoint=f"{settings.otel_exporter_otlp_http_endpoint}/v1/traces")
    return ConsoleSpanExporter()


def setup_telemetry() -> None:
    """Install a tracer provider when tracing is enabled.

    Spans opened earlier go to the no-op default provider.
    """
    global _provider
    settings = get_settings()
    if not settings.otel_enabled or _provider is not None:
        return

    resource = Resource.create(
        {"service.name": settings.otel_service_name, "service.version": __version__}
    )
    _provider = TracerProvider(
        resource=resource,
        sampler=_sampler(settings.otel_traces_sampler, settings.otel_traces_sampler_arg),
    )
    _provider.add_span_processor(BatchSpanProcessor(_exporter(settings)))
    trace.set_tracer_provider(_provider)
    logger.info(
        "Tracing builds to %s (sampler=%s)",
        settings.otel_exporter_type,
        settings.otel_traces_sampler,
    )


def get_tracer(name: str) -> trace.Tracer:
    """Tracer for a module; a no-op tracer while tracing is disabled."""
    return trace.get_tracer(name, __version__)


def shutdown_telemetry() -> None:
    """Flush pending spans and drop the provider."""
    global _provider
    if _provider is None:
        return
    _provider.shutdown()
    _provider = None
