import os

from hypothesis import HealthCheck, settings

# numeric tests are deterministic and serial
os.environ.setdefault("RESLAB_THREADS", "1")

settings.register_profile(
    "reslab", deadline=None, derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("reslab")
