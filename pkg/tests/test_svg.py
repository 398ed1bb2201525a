import xml.etree.ElementTree as ET

from crosscap.surface import parse_curve
from crosscap.svg import assign_depths, render

NS = {"s": "http://www.w3.org/2000/svg"}


def curves(*names):
    return [parse_curve(n, 7) for n in names]


def test_four_named_curves():
    doc = render(curves("beta", "gamma", "delta", "epsilon"), 7)
    root = ET.fromstring(doc.encode())
    ids = [g.get("id") for g in root.findall("s:g", NS)]
    assert ids == ["crosscaps", "crosscap-labels", "curve-beta", "curve-gamma", "curve-delta", "curve-epsilon"]
    assert len(root.findall("s:g[@id='crosscaps']/s:circle", NS)) == 7
    labels = [t.text for t in root.findall("s:g/s:text", NS) if t.text and not t.text.isdigit()]
    assert labels == ["beta", "gamma", "delta", "epsilon"]


def test_one_sided_curves_are_dashed():
    root = ET.fromstring(render(curves("{1,3,5}", "beta"), 7).encode())
    odd = root.find("s:g[@id='curve-1-3-5']/s:polyline", NS)
    even = root.find("s:g[@id='curve-beta']/s:polyline", NS)
    assert odd.get("stroke-dasharray")
    assert even.get("stroke-dasharray") is None


def test_output_is_deterministic():
    a = render(curves("delta", "mu3", "{2,5}"), 7)
    assert a == render(curves("delta", "mu3", "{2,5}"), 7)


def test_duplicate_curves_get_distinct_ids():
    root = ET.fromstring(render(curves("beta", "beta"), 7).encode())
    assert [g.get("id") for g in root.findall("s:g", NS)][2:] == ["curve-beta", "curve-beta-2"]


def test_nesting_depth():
    # epsilon spans everything, so it sits above the other three
    d = assign_depths(curves("beta", "gamma", "delta", "epsilon"))
    assert d[3] == max(d) and d[3] > d[0]
    assert assign_depths(curves("alpha1", "alpha4")) == [1, 1]
