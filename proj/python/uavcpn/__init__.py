"""Task completion probability for UAV-relayed computing power networks."""

from ._core import (  # noqa: F401
    AnalysisResult,
    AveragedResult,
    ComputeLatencyModel,
    Estimate,
    ScenarioConfig,
    analyze_point,
    average_success_probability,
    db_to_linear,
    estimate_success,
    expected_received_power,
    latency_cdf,
    load_config,
    los_probability,
    max_service_radius,
    qualified_intensity,
    success_probability,
    transmission_latency,
    validate,
    __version__,
)
