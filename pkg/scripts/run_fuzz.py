"""
🎯 Run Solver Cross-Validation
================================

Random LP instances solved by the substitution method and by the
reference simplex; every divergence is stored as a replayable record.
"""

import json
import os
import sys
import time
from datetime import datetime
from pathlib import Path

# Add backend to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from backend.config import FUZZ_COUNT, FUZZ_M_MAX, FUZZ_N_MAX, FUZZ_RANGE, FUZZ_SEED, FUZZ_WORKERS, RESULTS_DIR
from backend.fuzz_service import fuzz_run
from backend.io_service import load_problem

# ══════════════════════════════════════════════════════════════
# Configuration
# ══════════════════════════════════════════════════════════════

EXAMPLE_PATH = Path(os.path.dirname(__file__)) / ".." / "data" / "examples" / "negative_max.json"
OUT_DIR = Path(RESULTS_DIR)
OUT_DIR.mkdir(parents=True, exist_ok=True)

print("=" * 80)
print("🎯 SUBSTITUTION METHOD VS SIMPLEX")
print("=" * 80)
print(f"m <= {FUZZ_M_MAX}, n <= {FUZZ_N_MAX}, entries in [-{FUZZ_RANGE}, {FUZZ_RANGE}]")
print(f"{FUZZ_COUNT} instances, seed {FUZZ_SEED}, {FUZZ_WORKERS} worker(s)")

# ══════════════════════════════════════════════════════════════
# Load the worked example into the corpus
# ══════════════════════════════════════════════════════════════

print("\n📥 Loading worked example...")
example = load_problem(EXAMPLE_PATH)
print(f"✅ Loaded '{example.name}' ({example.m}x{example.n})")

# ══════════════════════════════════════════════════════════════
# Run campaign
# ══════════════════════════════════════════════════════════════

print("\n🚀 Running campaign...")
print("─" * 80)

start_time = time.time()
report = fuzz_run(FUZZ_M_MAX, FUZZ_N_MAX, FUZZ_COUNT, FUZZ_SEED, FUZZ_RANGE,
                  out_dir=OUT_DIR, workers=FUZZ_WORKERS, extra=[example.data()])
elapsed = time.time() - start_time

print(f"✅ {len(report['instances'])} instances in {elapsed:.2f}s")

# ══════════════════════════════════════════════════════════════
# Save report
# ══════════════════════════════════════════════════════════════

timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
report_file = OUT_DIR / f"fuzz_report_{timestamp}.json"
report['metadata'] = {'timestamp': timestamp, 'elapsed_seconds': elapsed}

with open(report_file, 'w', encoding='utf-8') as f:
    json.dump(report, f, ensure_ascii=False, indent=2)

print(f"✅ Report saved to: {report_file}")

# ══════════════════════════════════════════════════════════════
# Print summary
# ══════════════════════════════════════════════════════════════

print("\n" + "=" * 80)
print("📊 CROSS-VALIDATION SUMMARY")
print("=" * 80)

total = len(report['instances'])
print(f"\n📈 Classification:")
for name, count in report['tallies'].items():
    print(f"  {name:<16} {count:>5}  ({count / total * 100:.1f}%)")

print(f"\n📏 Steps vs n:")
for n, steps in sorted(report['max_steps_by_n'].items()):
    print(f"  n={n}: max {steps} substitutions")
print(f"  Max cells read in one step: {report['max_cells_read']}")
print(f"  Max update multiplications: {report['max_update_mults']}")
if report['budget_breaches']:
    print(f"⚠️  Read or update budget exceeded on instances: {report['budget_breaches']}")

example_row = report['instances'][-1]
print(f"\n🔎 Worked example: method {example_row['method_z']} vs oracle {example_row['oracle_z']} "
      f"({example_row['divergence']})")

if report['certificate_failures']:
    print(f"\n⚠️  Certificate failures: {report['certificate_failures']}")
else:
    print("\n✅ Every reported optimum passed the exact certificate check")

if report['records']:
    print(f"\n⚠️  {len(report['records'])} counterexample record(s) written to {OUT_DIR}")

print("\n" + "=" * 80)
print("✅ Campaign complete!")
print("=" * 80)
