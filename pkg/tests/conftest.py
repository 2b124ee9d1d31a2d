"""Collects the acceptance criteria outcomes and prints one line per criterion."""


def pytest_terminal_summary(terminalreporter):
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" not in props:
                continue
            key = props["criterion"]
            ok = status == "passed" and outcomes.get(key, (True,))[0]
            outcomes[key] = (ok, props.get("summary", ""))
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(outcomes):
        ok, summary = outcomes[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {summary}")
