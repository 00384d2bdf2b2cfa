"""Smoke test for the Python bindings. Run after `pip install crates/py`."""

import json

import dilator

assert dilator.jeval("Id", "w") == "w*3", dilator.jeval("Id", "w")
assert dilator.jprime("Id") == "w*5"
assert dilator.psi_otp("Id", "w") == "w^2"

try:
    dilator.jplus("Id")
except ValueError as e:
    print("jplus(Id) leaves the notation:", e)
else:
    raise AssertionError("expected ValueError")

passed, instances = dilator.check("psi-sum")
assert passed and instances > 0

code, out = dilator.run(["--format", "json", "jeval", "omega[Id]"])
assert code == 0
assert json.loads(out)["value"] == "w^(w+1)", out

code, _ = dilator.run(["jeval", "Id +"])
assert code == 3

print("smoke test ok")
