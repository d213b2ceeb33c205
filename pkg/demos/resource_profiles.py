"""Turn raw bandwidth and CPU figures into the two effort dimensions.

Run: python demos/resource_profiles.py
"""

from fogpact import ResourceProfile, profile_to_effort

base = dict(
    bandwidth_hz=10e6,
    cpu_cycles_per_s=2e9,
    data_bits=8e6,
    tx_power_w=0.2,
    noise_density_w_per_hz=4e-21,
    cycles_per_bit=100.0,
)
for distance in (1.0, 50.0, 200.0, 1000.0):
    effort = profile_to_effort(ResourceProfile(distance_m=distance, **base))
    print(f"{distance:7.0f} m  transmission {effort[0]:8.3f} /s  processing {effort[1]:6.3f} /s")
