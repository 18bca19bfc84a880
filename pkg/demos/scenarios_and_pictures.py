"""Running a named scenario and drawing a map.

Scenario results are plain dictionaries, the same JSON the command line
prints.  The picture goes to a temporary directory.
"""

import json
import tempfile
from pathlib import Path

from harmconv import render, scenarios
from harmconv import canonical as C

print("scenarios:", ", ".join(scenarios.REGISTRY))
res = scenarios.run_scenario("th2.2", {"a": 0.2, "a2": -0.1j, "grid_radii": 12})
d = res.as_dict()
print("verdict:", d["verdict"], "in", round(d["runtime"], 2), "s")
for c in d["certificates"]:
    print("  direction", round(c["direction"], 4), "min real part", c["certificate"]["min_real_part"])
print("checks:", json.dumps(d["checks"]))

f = C.right_halfplane_f0(2000)
svg, table = render.render(f, {"rings": 6, "rays": 12})
out = Path(tempfile.mkdtemp()) / "f0.svg"
out.write_text(svg)
print("wrote", out, "and", len(table.splitlines()) - 1, "sample rows")
