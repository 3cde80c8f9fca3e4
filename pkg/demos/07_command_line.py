# %% [markdown]
# # Command line
#
# The ``cpthermal`` entry point writes deterministic CSV files with a
# commented header that records the tool version, a configuration hash and
# the tolerances.  This script drives it through ``subprocess``.

# %%
import pathlib
import subprocess
import sys
import tempfile

out = pathlib.Path(tempfile.mkdtemp())


def run(*args):
    cmd = [sys.executable, "-m", "cpthermal", *args]
    res = subprocess.run(cmd, capture_output=True, text=True)
    print("$ cpthermal", " ".join(args), f"-> exit {res.returncode}")
    print(res.stdout or res.stderr)


run("eval", "--zeta", "1", "--tau", "2")
run("eval", "--z", "1e-7", "--T", "300", "--omega0", "2.41e15", "--alpha0", "4.7e-29")
run("sweep", "--grid-zeta", "0.1:10:4", "--grid-tau", "1,100", "--out", str(out / "sweep.csv"))
print((out / "sweep.csv").read_text()[:600])
run("regimes", "--grid-zeta", "0.01,1,50", "--grid-tau", "0.01,20,1e5")
run("selfcheck")
run("eval", "--zeta", "-1")
