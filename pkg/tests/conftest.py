import os

from hypothesis import HealthCheck, settings

# Property suites run 200 derandomized cases; VIRTBRAID_SEED shifts the database-free seed.
settings.register_profile(
    "virtbraid",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("virtbraid")

SEED = int(os.environ.get("VIRTBRAID_SEED", "0"))
