from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from docutils import nodes
from sphinx import addnodes
from sphinx.domains import Domain, ObjType
from sphinx.roles import XRefRole
from sphinx.util.nodes import make_refnode

from orientk.directives import GraphReport
from orientk.graph import Multigraph


@dataclass(frozen=True)
class ReportEntry:
    docname: str
    anchor: str
    objtype: str


class OrientationDomain(Domain):
    """Sphinx domain holding the configured graphs and their rendered reports."""

    name = "orientk"
    label = "Orientations"

    object_types = {
        "graph": ObjType("graph", "graph"),
    }

    directives = {
        "report": GraphReport,
    }

    roles = {
        "graph": XRefRole(),
    }

    initial_data: Dict[str, Dict] = {
        "objects": {},  # objtype -> name -> ReportEntry
        "graphs": {},  # name -> Multigraph
    }

    def set_graphs(self, graphs: Mapping[str, Multigraph]) -> None:
        self.data["graphs"] = dict(graphs)

    def get_graph(self, name: str) -> Optional[Multigraph]:
        return self.data.get("graphs", {}).get(name)

    def note_object(self, name: str, objtype: str, anchor: str) -> None:
        objects_by_type: Dict[str, Dict[str, ReportEntry]] = self.data.setdefault("objects", {})
        objects_by_type.setdefault(objtype, {})[name] = ReportEntry(
            docname=self.env.docname,
            anchor=anchor,
            objtype=objtype,
        )

    def clear_doc(self, docname: str) -> None:
        objects_by_type: Dict[str, Dict[str, ReportEntry]] = self.data.get("objects", {})
        for objtype, objects in list(objects_by_type.items()):
            for name in [n for n, entry in objects.items() if entry.docname == docname]:
                del objects[name]
            if not objects:
                del objects_by_type[objtype]

    def resolve_xref(
        self,
        env,
        fromdocname: str,
        builder,
        typ: str,
        target: str,
        node: addnodes.pending_xref,
        contnode: nodes.Element,
    ) -> Optional[nodes.Element]:
        entry = self.data.get("objects", {}).get(typ, {}).get(target)
        if entry is None:
            return None
        return make_refnode(
            builder=builder,
            fromdocname=fromdocname,
            todocname=entry.docname,
            targetid=entry.anchor,
            child=contnode,
            title=target,
        )

    def get_objects(self) -> Iterator[Tuple[str, str, str, str, str, int]]:
        for objtype, objects in self.data.get("objects", {}).items():
            for name, entry in objects.items():
                yield (name, name, objtype, entry.docname, entry.anchor, 1)

    def merge_domaindata(self, docnames: Iterable[str], otherdata: Dict) -> None:
        objects_by_type: Dict[str, Dict[str, ReportEntry]] = self.data.setdefault("objects", {})
        for objtype, other_objects in otherdata.get("objects", {}).items():
            objects_by_type.setdefault(objtype, {})
            for name, entry in other_objects.items():
                if entry.docname in docnames:
                    objects_by_type[objtype][name] = entry
        # graphs are loaded from files on every build
        self.data.setdefault("graphs", {}).update(otherdata.get("graphs", {}))
