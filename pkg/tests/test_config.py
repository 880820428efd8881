import pytest

from hhbar.config import ConfigError, RunConfig, load_config_file, parse_config_text
from hhbar.potential import Flavor


def test_defaults_are_reference_basis():
    c = RunConfig()
    assert (c.n_max, c.r_min, c.r_max, c.tau) == (120, 3e-5, 20.0, 1e-12)
    assert c.basis_spec().size == 240
    c.validate()


def test_parse_typed_keys():
    text = """
    # comment
    flavor = scaled
    l = 1
    n_max = 60   # trailing
    r_min = 7e-5
    tau = 1e-13
    extended = false
    window_lo = 12
    """
    d = parse_config_text(text)
    assert d == {"flavor": Flavor.MASS_SCALED, "l": 1, "n_max": 60, "r_min": 7e-5, "tau": 1e-13,
                 "extended": False, "window_lo": 12.0}


@pytest.mark.parametrize("text,field", [("bogus = 1", "bogus"), ("n_max = many", "n_max"),
                                        ("just words", "<config>:1"), ("flavor = xyz", "flavor")])
def test_parse_errors_name_field(text, field):
    with pytest.raises(ConfigError) as exc:
        parse_config_text(text)
    assert exc.value.field == field


@pytest.mark.parametrize("kw,field", [
    (dict(n_max=1), "n_max"), (dict(l=-1), "l"), (dict(r_min=0.0), "r_min"),
    (dict(r_max=1e-6), "r_max"), (dict(tau=-1.0), "tau"), (dict(window_lo=20.0), "window_hi"),
    (dict(format="xml"), "format"), (dict(params="/no/such/file"), "params"),
    (dict(output="/no/such/dir/out.csv"), "output"), (dict(d=1.0), "D"), (dict(d=-1.0, D=0.0), "d"),
    (dict(command="plot"), "command"),
])
def test_validation(kw, field):
    with pytest.raises(ConfigError) as exc:
        RunConfig(**kw).validate()
    assert exc.value.field == field


def test_load_file(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("flavor = bo\nr_max = 18\n")
    assert load_config_file(p) == {"flavor": Flavor.BO, "r_max": 18.0}


def test_echo_is_plain():
    echo = RunConfig(extra={"r": [1.0]}).echo()
    assert echo["flavor"] == "bo" and echo["r"] == [1.0]
