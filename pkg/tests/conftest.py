from hypothesis import HealthCheck, settings

# exact arithmetic has wildly variable per-example timing
settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")
