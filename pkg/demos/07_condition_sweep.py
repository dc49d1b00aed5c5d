# A small accuracy sweep, written to CSV and read back.
import tempfile
from pathlib import Path

from grdecomp.bench import ExperimentConfig, read_csv, run_sweep

out = Path(tempfile.mkdtemp()) / "hr.csv"
cfg = ExperimentConfig("hr", size=80, conds=(1e2, 1e4, 1e6, 1e8), trials=2, output_path=str(out))
run_sweep(cfg)
print(out.read_text().splitlines()[0])

records = read_csv(out)
for method in cfg.methods:
    worst = {}
    for r in records:
        if r.method == method and r.status == "ok":
            worst[r.cond_target] = max(worst.get(r.cond_target, 0.0), r.isometry_error)
    print(f"{method:>5}", "  ".join(f"{c:.0e}:{v:.1e}" for c, v in sorted(worst.items())))

# the same sweep from the shell:
#   grbench hr --size 80 --trials 2 --out hr.csv
