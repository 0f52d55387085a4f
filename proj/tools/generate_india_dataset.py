#!/usr/bin/env python3
"""Generates the bundled India dataset under data/.

Geometry is deliberately schematic: each state/UT is a hexagon of the
correct official area, centered at an approximate equal-area projection of
the state centroid. The simulator only needs a bounded planar territory
with faithful per-state areas and rough relative placement, not coastlines.

Run from the repository root:  python3 tools/generate_india_dataset.py
"""

import csv
import json
import math
import os

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "data")

# name, human clusters, infected clusters (2020-03-20), area km^2,
# centroid lat, centroid lon, movement std-dev km, age-profile shift
STATES = [
    ("Kerala",            852, 40,  38863, 10.5, 76.3,  9.0,  0.030),
    ("Goa",                45,  0,   3702, 15.35, 74.0, 8.0,  0.015),
    ("Gujarat",          1411,  7, 196244, 22.7, 71.5, 12.0,  0.000),
    ("Rajasthan",        1679, 19, 342239, 26.6, 73.8, 11.0, -0.010),
    ("Punjab",            697,  3,  50362, 31.0, 75.4, 10.0,  0.010),
    ("Tamil Nadu",       1886,  3, 130060, 11.0, 78.4, 11.0,  0.020),
    ("Karnataka",        1515, 15, 191791, 14.8, 76.2, 12.0,  0.005),
    ("Maharashtra",      2845, 54, 307713, 19.5, 76.1, 13.0,  0.005),
    ("Madhya Pradesh",   1755,  4, 308252, 23.5, 78.5, 10.0, -0.010),
    ("Haryana",           619, 19,  44212, 29.2, 76.3, 11.0,  0.000),
    ("Andhra Pradesh",    853,  3, 162968, 15.9, 79.7, 10.0,  0.010),
    ("Telangana",        1294, 19, 112077, 17.9, 79.1, 12.0,  0.000),
    ("Chhattisgarh",      600,  1, 135192, 21.3, 82.0,  9.0, -0.010),
    ("Uttar Pradesh",    5000, 26, 240928, 27.0, 80.7, 12.0, -0.020),
    ("New Delhi",         435, 22,   1484, 28.6, 77.1, 14.0,  0.000),
    ("Himachal Pradesh",  167,  2,  55673, 31.9, 77.2,  7.0,  0.010),
    ("Uttarakhand",       266,  3,  53483, 30.1, 79.3,  8.0,  0.005),
    ("Odisha",           1012,  2, 155707, 20.5, 84.4,  9.0,  0.000),
    ("Jharkhand",         746,  0,  79716, 23.6, 85.5,  9.0, -0.015),
    ("Bihar",            2519,  0,  94163, 25.7, 85.8, 10.0, -0.030),
    ("Ladhak",             29, 10,  59146, 34.2, 77.6,  6.0,  0.000),
    ("Jammu & Kashmir",   284,  4,  42241, 33.5, 75.0,  7.0,  0.000),
    ("West Bengal",      2225,  2,  88752, 23.8, 87.7, 11.0,  0.005),
    ("Arunachal Pradesh",  36,  0,  83743, 28.0, 94.5,  6.0, -0.005),
    ("Assam",             773,  0,  78438, 26.2, 92.9,  8.0, -0.010),
    ("Northeast Combined", 375, 0,  99998, 25.0, 93.5,  7.0, -0.005),
]

PERSONS_PER_CLUSTER = 45121  # ~1.35e9 / 29918

# Decadal bins 0-9 ... 80+, national baseline (census-2011 shaped).
AGE_BASE = [0.186, 0.185, 0.177, 0.152, 0.121, 0.089, 0.057, 0.024, 0.009]
AGE_BINS = ["0-9", "10-19", "20-29", "30-39", "40-49",
            "50-59", "60-69", "70-79", "80+"]

# Relative infection weight per decadal bin, WHO China joint-mission shaped,
# normalized so the peak bin is 1.
AGE_RISK = [0.05, 0.10, 0.45, 0.65, 0.75, 1.00, 0.95, 0.60, 0.30]

# Out-migration share of each state's clusters (census-shaped, schematic)
# and the national destination attractiveness profile.
OUT_SHARE = {
    "Bihar": 0.14, "Uttar Pradesh": 0.12, "Jharkhand": 0.09, "Odisha": 0.08,
    "Rajasthan": 0.07, "Madhya Pradesh": 0.06, "West Bengal": 0.06,
    "Assam": 0.05, "Chhattisgarh": 0.05, "Uttarakhand": 0.05,
    "Himachal Pradesh": 0.04, "Punjab": 0.04, "Andhra Pradesh": 0.05,
    "Kerala": 0.04, "Tamil Nadu": 0.03, "Northeast Combined": 0.05,
    "Jammu & Kashmir": 0.03, "Haryana": 0.04, "Telangana": 0.03,
    "Karnataka": 0.03, "Maharashtra": 0.02, "Gujarat": 0.02,
    "New Delhi": 0.02, "Goa": 0.03, "Arunachal Pradesh": 0.04,
    "Ladhak": 0.02,
}
ATTRACTION = {
    "New Delhi": 0.22, "Maharashtra": 0.20, "Gujarat": 0.11,
    "Karnataka": 0.09, "Tamil Nadu": 0.07, "Haryana": 0.06,
    "Punjab": 0.05, "Telangana": 0.05, "West Bengal": 0.04,
    "Uttar Pradesh": 0.04, "Kerala": 0.03, "Rajasthan": 0.02,
    "Madhya Pradesh": 0.02,
}

KM_PER_DEG_LAT = 110.6
KM_PER_DEG_LON = 101.7  # cos(24 deg) * 111.32, frame reference parallel
LAT0, LON0 = 24.0, 83.0


def project(lat, lon):
    return ((lon - LON0) * KM_PER_DEG_LON, (lat - LAT0) * KM_PER_DEG_LAT)


def hexagon(cx, cy, area, rotation):
    r = math.sqrt(2.0 * area / (3.0 * math.sqrt(3.0)))
    pts = []
    for k in range(6):
        a = rotation + k * math.pi / 3.0
        pts.append([round(cx + r * math.cos(a), 3),
                    round(cy + r * math.sin(a), 3)])
    pts.append(pts[0])
    return [pts]


def age_profile(shift):
    # Move `shift` mass from the two youngest bins to the 60+ bins.
    f = list(AGE_BASE)
    f[0] -= shift * 0.6
    f[1] -= shift * 0.4
    f[6] += shift * 0.5
    f[7] += shift * 0.3
    f[8] += shift * 0.2
    f = [round(v, 6) for v in f]
    f[2] = round(f[2] + (1.0 - sum(f)), 6)
    assert abs(sum(f) - 1.0) < 1e-12 and all(v > 0 for v in f)
    return f


def migration_matrix(names):
    rows = {}
    for origin in names:
        share = OUT_SHARE[origin]
        raw = [ATTRACTION.get(d, 0.004) if d != origin else 0.0
               for d in names]
        s = sum(raw)
        rows[origin] = [round(share * v / s, 6) for v in raw]
    return rows


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    names = [s[0] for s in STATES]

    features = []
    for i, (name, _, _, area, lat, lon, _, _) in enumerate(STATES):
        cx, cy = project(lat, lon)
        rot = (i * 0.37) % (math.pi / 3.0)
        features.append({
            "type": "Feature",
            "properties": {"name": name},
            "geometry": {"type": "Polygon",
                         "coordinates": hexagon(cx, cy, area, rot)},
        })
    with open(os.path.join(OUT_DIR, "india_states.geojson"), "w") as f:
        json.dump({"type": "FeatureCollection", "features": features},
                  f, indent=1)
        f.write("\n")

    with open(os.path.join(OUT_DIR, "states.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["name", "population", "cluster_quota", "initial_infected",
                    "move_stddev_km", "age_bin_fractions"])
        for name, quota, infected, _, _, _, sigma, shift in STATES:
            w.writerow([name, quota * PERSONS_PER_CLUSTER, quota, infected,
                        sigma, ";".join(str(v) for v in age_profile(shift))])

    rows = migration_matrix(names)
    with open(os.path.join(OUT_DIR, "migration.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["origin"] + names)
        for name in names:
            w.writerow([name] + rows[name])

    with open(os.path.join(OUT_DIR, "age_risk.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["age_bin", "relative_weight"])
        for b, v in zip(AGE_BINS, AGE_RISK):
            w.writerow([b, v])

    total_quota = sum(s[1] for s in STATES)
    total_inf = sum(s[2] for s in STATES)
    total_area = sum(s[3] for s in STATES)
    print(f"clusters={total_quota} infected={total_inf} area={total_area}")


if __name__ == "__main__":
    main()
