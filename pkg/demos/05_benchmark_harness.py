# Benchmark harness on a synthetic directory; real runs point it at the
# Taillard or VRF files and a reference CSV of previous best lower bounds.

#%%
import tempfile
from pathlib import Path

from pfsbounds import GenSpec, generate, lb_machine_plus, serialize
from pfsbounds.bench import emit_report, run_bench

root = Path(tempfile.mkdtemp())
(root / "inst").mkdir()
ref = ["instance,plb,ub"]
for k, (n, m) in enumerate([(20, 5), (20, 10), (50, 5), (100, 5)]):
    inst = generate(GenSpec(n, m, 1, 99, seed=k))
    (root / "inst" / f"syn{k:02d}.txt").write_text(serialize(inst))
    ref.append(f"syn{k:02d},{lb_machine_plus(inst)},")
(root / "ref.csv").write_text("\n".join(ref) + "\n")

#%%
res = run_bench(root / "inst", root / "ref.csv", ["ps:1,1", "ps:2,1", "ps:1,2"])
print(emit_report(res, "table", runtime=False))
