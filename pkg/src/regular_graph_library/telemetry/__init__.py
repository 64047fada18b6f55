"""OpenTelemetry integration for tracing library builds."""

from regular_graph_library.telemetry.setup import get_tracer, setup_telemetry, shutdown_telemetry

__all__ = ["get_tracer", "setup_telemetry", "shutdown_telemetry"]
