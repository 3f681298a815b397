"""Record service fixtures for the frontend tests.

Runs the HTTP service in-process and captures real responses so the
vitest suite is checked against exactly what the server sends:

- somos_trace.json: a 60-step recorded click-session on the
  extended_somos4 construction (cycling vertices 1,2,3,4), with the full
  object after every step and the final canonical export.
- universal_plabic_2.json: a bicolored-graph session seed.
- framed_markov.json: a matrix with frozen vertices (for rendering).
- error_frozen.json: the error payload of a rejected mutation.

Run from the repository root or frontend/:  python3 scripts/make_fixtures.py
"""

import json
import pathlib

from fastapi.testclient import TestClient

from quiverlab.cli import main as cli_main
from quiverlab.constructions import named_quiver
from quiverlab.matrix import framed
from quiverlab.plabic import universal_plabic
from quiverlab.serialize import dumps_canonical, matrix_to_obj, plabic_to_obj
from quiverlab.service import create_app

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def write(name: str, payload) -> None:
    path = FIXTURES / name
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")


def record_somos_trace(client: TestClient) -> None:
    view = client.post(
        "/sessions", json={"construction": "extended_somos4"}
    ).json()
    sid = view["session"]
    objects = [view["object"]]
    ops = []
    for step in range(60):
        vertex = (0, 1, 2, 3)[step % 4] + 1
        view = client.post(f"/sessions/{sid}/mutate", json={"vertex": vertex}).json()
        ops.append({"op": "mutate", "vertex": vertex})
        objects.append(view["object"])
    final = client.get(f"/sessions/{sid}/export", params={"format": "json"}).json()
    write(
        "somos_trace.json",
        {
            "construction": "extended_somos4",
            "params": {},
            "seedObject": None,
            "ops": ops,
            "objects": objects,
            "final": final["content"],
        },
    )


def record_error_payload(client: TestClient) -> None:
    framed_markov = matrix_to_obj(framed(named_quiver("markov")))
    view = client.post(
        "/sessions", json={"object": json.loads(dumps_canonical(framed_markov))}
    ).json()
    response = client.post(
        f"/sessions/{view['session']}/mutate", json={"vertex": 4}
    )
    assert response.status_code == 400
    write("error_frozen.json", {"status": 400, "body": response.json()})


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with TestClient(create_app()) as client:
        record_somos_trace(client)
        record_error_payload(client)
    write(
        "universal_plabic_2.json",
        json.loads(dumps_canonical(plabic_to_obj(universal_plabic(2)))),
    )
    write(
        "framed_markov.json",
        json.loads(dumps_canonical(matrix_to_obj(framed(named_quiver("markov"))))),
    )
    # sanity: the CLI reproduces the recorded final state byte for byte
    from click.testing import CliRunner

    runner = CliRunner()
    made = runner.invoke(cli_main, ["make", "extended_somos4"]).output
    args = ["mutate"]
    for step in range(60):
        args += ["--at", str((0, 1, 2, 3)[step % 4] + 1)]
    piped = runner.invoke(cli_main, args, input=made).output
    recorded = json.loads((FIXTURES / "somos_trace.json").read_text())
    assert piped == recorded["final"] + "\n", "CLI and service disagree"
    print("CLI differential check passed")


if __name__ == "__main__":
    main()
