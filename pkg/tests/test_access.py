import dataclasses

import pytest

from ottdb import Action, AuditLog, Role, Session, authorize, builtin_schema
from ottdb.errors import PermissionDeniedError

EXPECTED_GRID = {
    # action: (client, contributor, admin)
    Action.QUERY: (True, True, True),
    Action.DUMP_CSV: (True, True, True),
    Action.INSERT: (False, True, True),
    Action.LOAD_CSV: (False, True, True),
    Action.CREATE_TABLE: (False, False, True),
    Action.DELETE_ROW: (False, False, True),
    Action.UPDATE_ROW: (False, False, True),
}

ROLES = (Role.CLIENT, Role.CONTRIBUTOR, Role.ADMIN)


def test_full_matrix():
    for action, expected in EXPECTED_GRID.items():
        for role, allowed in zip(ROLES, expected):
            session = Session(role, builtin_schema())
            decision = authorize(session, action)
            assert decision.allowed is allowed, (role, action)
            assert decision.role is role and decision.action is action


def test_privilege_monotonicity():
    # if a role allows an action, every higher role allows it too
    for action in Action:
        allowed_ranks = [
            role.rank for role in ROLES
            if authorize(Session(role, builtin_schema()), action).allowed
        ]
        if allowed_ranks:
            threshold = min(allowed_ranks)
            for role in ROLES:
                expected = role.rank >= threshold
                got = authorize(Session(role, builtin_schema()), action).allowed
                assert got is expected


def test_role_ordering():
    assert Role.CLIENT < Role.CONTRIBUTOR < Role.ADMIN
    assert Role.ADMIN >= Role.CLIENT


def test_client_examples():
    client = Session(Role.CLIENT, builtin_schema())
    assert not authorize(client, Action.INSERT).allowed
    admin = Session(Role.ADMIN, builtin_schema())
    assert authorize(admin, Action.CREATE_TABLE).allowed
    contributor = Session(Role.CONTRIBUTOR, builtin_schema())
    assert authorize(contributor, Action.QUERY).allowed


def test_session_role_is_immutable():
    session = Session(Role.CLIENT, builtin_schema())
    with pytest.raises(dataclasses.FrozenInstanceError):
        session.role = Role.ADMIN


def test_deny_is_a_value_but_session_raises():
    session = Session(Role.CLIENT, builtin_schema())
    decision = authorize(session, Action.INSERT)
    assert not decision.allowed and decision.reason
    with pytest.raises(PermissionDeniedError):
        session.insert("Platforms", (1, "Netflix"))


def test_contributor_inserts_still_validated():
    from ottdb.errors import ForeignKeyViolationError

    session = Session(Role.CONTRIBUTOR, builtin_schema())
    with pytest.raises(ForeignKeyViolationError):
        session.insert("Show_id-name", (1, "Orphan"))


def test_audit_log_one_line_per_decision(tmp_path):
    path = tmp_path / "audit.log"
    session = Session(Role.CLIENT, builtin_schema(), AuditLog(path))
    session.query("SELECT Age FROM Actors")
    with pytest.raises(PermissionDeniedError):
        session.insert("Platforms", (1, "Netflix"))
    lines = path.read_text().splitlines()
    assert len(lines) == 2
    assert "role=client action=query verdict=allow" in lines[0]
    assert "role=client action=insert verdict=deny" in lines[1]


def test_audit_21_cell_grid(tmp_path):
    path = tmp_path / "grid.log"
    for role in ROLES:
        session = Session(role, builtin_schema(), AuditLog(path))
        for action in Action:
            authorize(session, action)
    lines = path.read_text().splitlines()
    assert len(lines) == 21
    assert sum("verdict=allow" in line for line in lines) == sum(
        sum(grid) for grid in EXPECTED_GRID.values()
    )


def test_run_sql_routes_create_table_to_admin():
    ddl = "CREATE TABLE Extra (Id INT, PRIMARY KEY (Id))"
    admin = Session(Role.ADMIN, builtin_schema())
    assert admin.run_sql(ddl) == "created table Extra"
    contributor = Session(Role.CONTRIBUTOR, builtin_schema())
    with pytest.raises(PermissionDeniedError):
        contributor.run_sql(ddl)
