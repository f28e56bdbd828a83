"""Winged decahedron chains and necklaces, with an interlocking verifier."""

from .decahedron import (Assembly, BuildParams, RelationSpec, Tile, build_chain,
                         build_decahedron, build_necklace, find_overlaps)
from .errors import (BuildError, BuildOverlap, DecalockError, GeometryError, ParseError,
                     SchemaVersionMismatch)
from .geom import ConvexFacet, RigidMotion, Twist, facet_facet_classify, swept_first_hit
from .interlock import VerifyParams, cone_trivial, find_contacts, lemma_suite, verify_assembly
from .io import export_mesh, parse_scene, serialize_scene

__version__ = "0.1.0"
