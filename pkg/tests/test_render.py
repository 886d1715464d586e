import re
import xml.etree.ElementTree as ET

import pytest

from multimap import fixtures
from multimap.realization import realize
from multimap.render import RenderOptions, render_svg

from conftest import GOLDEN3

NS = "{http://www.w3.org/2000/svg}"


def parse(svg):
    return ET.fromstring(svg)


def of_class(root, tag, cls):
    return [e for e in root.iter(NS + tag) if e.get("class") == cls]


def test_golden3_render():
    F = realize(GOLDEN3).multimap
    root = parse(render_svg(F))
    assert len(of_class(root, "line", "segment")) == 9
    grid = of_class(root, "path", "grid")
    assert len(grid) == 1 and grid[0].get("stroke-dasharray")
    xs = sorted({float(v) for v in re.findall(r"M([\d.]+) [\d.]+V", grid[0].get("d"))})
    # 9 partition points 1, 1.5, ..., 5 on a 340px span starting at 30
    assert xs == pytest.approx([30 + 340 * i / 8 for i in range(9)], abs=1e-3)


def test_one_branch():
    root = parse(render_svg(fixtures.identity()))
    assert len(list(root.iter(NS + "line"))) == 1
    assert not list(root.iter(NS + "circle"))


def test_type_three_inventory(type3):
    root = parse(render_svg(type3))
    assert len(of_class(root, "line", "segment")) == 2
    assert len(of_class(root, "line", "vertical")) == 2
    assert len(of_class(root, "circle", "point")) == 5


def test_curves(sq):
    root = parse(render_svg(sq))
    curves = of_class(root, "polyline", "curve")
    assert len(curves) == 2
    assert len(curves[0].get("points").split()) == 65


def test_options(notue):
    svg = render_svg(notue, RenderOptions(size=200, gridlines=False, labels=True))
    root = parse(svg)
    assert root.get("width") == "200"
    assert not of_class(root, "path", "grid")
    assert [t.text for t in root.iter(NS + "text")] == ["0/1", "1/3", "2/3", "1/1"]
    with pytest.raises(ValueError):
        RenderOptions(size=0)


@pytest.mark.parametrize("name", sorted(fixtures.ALL))
def test_byte_stable(name):
    F = fixtures.ALL[name]()
    assert render_svg(F) == render_svg(fixtures.ALL[name]())
