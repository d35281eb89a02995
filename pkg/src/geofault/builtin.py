"""Bundled schema: BFO fragment, GeoCore anchor classes, and the GeoFault
fault vocabulary with its relation profiles and requirement axioms.

Everything here is data. The tables are the single source of truth; the
Turtle export under fixtures/geofault.ttl is generated from them.
"""

from __future__ import annotations

from functools import lru_cache

from .schema import Axiom, ClassDef, RelationDef, Schema
from .terms import Term, XSD_DECIMAL, bfo, geocore, geofault

SCHEMA_VERSION = "1.0.0"

# (local name, parent qname or None, label)
_BFO = [
    ("Entity", None, "Entity"),
    ("Continuant", "bfo:Entity", "Continuant"),
    ("Occurrent", "bfo:Entity", "Occurrent"),
    ("IndependentContinuant", "bfo:Continuant", "Independent Continuant"),
    ("SpecificallyDependentContinuant", "bfo:Continuant", "Specifically Dependent Continuant"),
    ("GenericallyDependentContinuant", "bfo:Continuant", "Generically Dependent Continuant"),
    ("MaterialEntity", "bfo:IndependentContinuant", "Material Entity"),
    ("ImmaterialEntity", "bfo:IndependentContinuant", "Immaterial Entity"),
    ("Object", "bfo:MaterialEntity", "Object"),
    ("FiatObjectPart", "bfo:MaterialEntity", "Fiat Object Part"),
    ("ObjectAggregate", "bfo:MaterialEntity", "Object Aggregate"),
    ("ContinuantFiatBoundary", "bfo:ImmaterialEntity", "Continuant Fiat Boundary"),
    ("OneDContinuantFiatBoundary", "bfo:ContinuantFiatBoundary", "1D Continuant Fiat Boundary"),
    ("TwoDContinuantFiatBoundary", "bfo:ContinuantFiatBoundary", "2D Continuant Fiat Boundary"),
    ("Site", "bfo:ImmaterialEntity", "Site"),
    ("SpatialRegion", "bfo:ImmaterialEntity", "Spatial Region"),
    ("TwoDSpatialRegion", "bfo:SpatialRegion", "2D Spatial Region"),
    ("ThreeDSpatialRegion", "bfo:SpatialRegion", "3D Spatial Region"),
    ("Quality", "bfo:SpecificallyDependentContinuant", "Quality"),
    ("RelationalQuality", "bfo:Quality", "Relational Quality"),
    ("RealizableEntity", "bfo:SpecificallyDependentContinuant", "Realizable Entity"),
    ("Role", "bfo:RealizableEntity", "Role"),
    ("Disposition", "bfo:RealizableEntity", "Disposition"),
    ("Process", "bfo:Occurrent", "Process"),
]

_GEOCORE = [
    ("GeologicalObject", "bfo:Object", "Geological Object"),
    ("EarthMaterial", "bfo:MaterialEntity", "Earth Material"),
    ("Rock", "geocore:EarthMaterial", "Rock"),
    ("EarthFluid", "geocore:EarthMaterial", "Earth Fluid"),
    ("GeologicalStructure", "bfo:GenericallyDependentContinuant", "Geological Structure"),
    ("GeologicalProcess", "bfo:Process", "Geological Process"),
    ("GeologicalTimeInterval", "bfo:Occurrent", "Geological Time Interval"),
]

# (local name, parent qname, label, definition)
_GEOFAULT = [
    # material fault anatomy
    ("RockVolume", "bfo:FiatObjectPart", "Rock Volume",
     "A fiat object part that is part of a geological object and is constituted by rock."),
    ("FaultVolume", "geofault:RockVolume", "Fault Volume",
     "A rock volume comprising a fault zone together with its fault walls."),
    ("FaultZone", "geocore:GeologicalObject", "Fault Zone",
     "A geological object, part of a fault volume, that accommodates the fault movement "
     "and materializes a sharp shear displacement."),
    ("FaultCore", "geocore:GeologicalObject", "Fault Core",
     "A geological object, part of a fault zone, generated by brittle shear deformation "
     "and constituted by brittle fault rock; it absorbs the high-strain displacement."),
    ("DamageZone", "geocore:GeologicalObject", "Damage Zone",
     "A geological object, part of a fault zone and of a fault wall, externally connected "
     "with the fault core; it accommodates the low-strain brittle deformation."),
    ("FaultWall", "geofault:RockVolume", "Fault Wall",
     "A rock volume, part of a fault volume and externally connected with the fault core, "
     "located aside the core; it has no specified external boundary."),
    ("FaultCoreMembrane", "geocore:GeologicalObject", "Fault Core Membrane",
     "A geological object, part of a fault core, constituted by brittle fault rock; a long "
     "thin layer bearing smearing and continuity qualities."),
    ("FaultCoreLens", "geocore:GeologicalObject", "Fault Core Lens",
     "A geological object, part of a fault core, constituted by rock playing a protolith role."),
    ("FaultSystem", "geofault:RockVolume", "Fault System",
     "A rock volume that has at least two fault volumes as parts."),
    ("PhysicalSlipSurface", "bfo:FiatObjectPart", "Physical Slip Surface",
     "A fiat object part of a fault wall, externally connected with the fault core: the "
     "material surface along which slip occurred."),
    # fault rocks
    ("BrittleFaultRock", "geocore:Rock", "Brittle Fault Rock",
     "A rock generated by brittle shear deformation."),
    ("FaultBreccia", "geofault:BrittleFaultRock", "Fault Breccia", ""),
    ("FaultGouge", "geofault:BrittleFaultRock", "Fault Gouge", ""),
    ("Cataclasite", "geofault:BrittleFaultRock", "Cataclasite", ""),
    # generative process
    ("BrittleShearDeformation", "geocore:GeologicalProcess", "Brittle Shear Deformation",
     "A geological process of brittle shear failure in the upper crust."),
    # immaterial entities
    ("FaultSurface", "bfo:TwoDContinuantFiatBoundary", "Fault Surface",
     "The 2D continuant fiat boundary related to a fault zone: the locus equidistant from "
     "the two fault walls, used to represent the fault at mapping scale."),
    ("FaultSurfaceLocation", "bfo:TwoDSpatialRegion", "Fault Surface Location",
     "The 2D spatial region a fault surface occupies in 3D space."),
    ("FaultTipLine", "bfo:OneDContinuantFiatBoundary", "Fault Tip Line",
     "The 1D continuant fiat boundary where the shear displacement of a fault zone goes to zero."),
    # structures
    ("FaultStructure", "geocore:GeologicalStructure", "Fault Structure",
     "A geological structure of a fault volume describing the mutual positions and "
     "orientations of the fault walls and the fault surface."),
    ("NormalFault", "geofault:FaultStructure", "Normal Fault", ""),
    ("ReverseFault", "geofault:FaultStructure", "Reverse Fault", ""),
    ("StrikeSlipFault", "geofault:FaultStructure", "Strike-Slip Fault", ""),
    ("DextralStrikeSlipFault", "geofault:StrikeSlipFault", "Dextral Strike-Slip Fault", ""),
    ("SinistralStrikeSlipFault", "geofault:StrikeSlipFault", "Sinistral Strike-Slip Fault", ""),
    ("ObliqueSlipFault", "geofault:FaultStructure", "Oblique-Slip Fault", ""),
    ("ScissorFault", "geofault:FaultStructure", "Scissor Fault", ""),
    ("GrowthFault", "geofault:FaultStructure", "Growth Fault", ""),
    ("FaultArrayStructure", "geocore:GeologicalStructure", "Fault Array Structure",
     "A geological structure of a fault system describing the geometric arrangement of the "
     "fault surfaces of its fault zones."),
    ("Parallel", "geofault:FaultArrayStructure", "Parallel", ""),
    ("Anastomosing", "geofault:FaultArrayStructure", "Anastomosing", ""),
    ("EnEchelon", "geofault:FaultArrayStructure", "En Echelon", ""),
    ("Relay", "geofault:FaultArrayStructure", "Relay", ""),
    ("Conjugate", "geofault:FaultArrayStructure", "Conjugate", ""),
    ("Flower", "geofault:FaultArrayStructure", "Flower", ""),
    ("Random", "geofault:FaultArrayStructure", "Random", ""),
    ("FaultSystemStructure", "geocore:GeologicalStructure", "Fault System Structure",
     "A geological structure of a fault system describing the spatial arrangement of the "
     "fault walls of its member fault volumes."),
    ("HorstAndGraben", "geofault:FaultSystemStructure", "Horst and Graben", ""),
    ("Duplex", "geofault:FaultSystemStructure", "Duplex", ""),
    ("PositiveFlower", "geofault:FaultSystemStructure", "Positive Flower", ""),
    ("NegativeFlower", "geofault:FaultSystemStructure", "Negative Flower", ""),
    ("SlipSurfaceStructure", "geocore:GeologicalStructure", "Slip Surface Structure",
     "A geological structure of a physical slip surface signalling the displacement direction."),
    ("Slickenside", "geofault:SlipSurfaceStructure", "Slickenside", ""),
    ("Slickenline", "geofault:SlipSurfaceStructure", "Slickenline", ""),
    ("ChatterMark", "geofault:SlipSurfaceStructure", "Chatter Mark", ""),
    # qualities
    ("FaultOrientation", "bfo:Quality", "Fault Orientation",
     "A quality of a fault surface location specifying the orientation of the fault surface."),
    ("FaultDip", "geofault:FaultOrientation", "Fault Dip",
     "The dip component of a fault orientation, in degrees from horizontal."),
    ("Vertical", "geofault:FaultDip", "Vertical", ""),
    ("Steep", "geofault:FaultDip", "Steep", ""),
    ("LowAngle", "geofault:FaultDip", "Low Angle", ""),
    ("FaultAzimuth", "geofault:FaultOrientation", "Fault Azimuth",
     "The azimuth component of a fault orientation, in degrees clockwise from north."),
    ("FaultSurfaceShape", "bfo:Quality", "Fault Surface Shape",
     "A quality of a fault surface abstracting its cross-section geometry."),
    ("Planar", "geofault:FaultSurfaceShape", "Planar", ""),
    ("Curved", "geofault:FaultSurfaceShape", "Curved (listric)", ""),
    ("Composite", "geofault:FaultSurfaceShape", "Composite", ""),
    ("Smeared", "bfo:Quality", "Smeared",
     "A quality of a fault core membrane signalling pressure injection of shale material "
     "from the fault walls."),
    ("IsSmeared", "geofault:Smeared", "Is Smeared", ""),
    ("NotSmeared", "geofault:Smeared", "Not Smeared", ""),
    ("Continuity", "bfo:Quality", "Continuity",
     "A quality of a fault core membrane specifying whether the membrane is continuous."),
    ("Continuous", "geofault:Continuity", "Continuous", ""),
    ("Semicontinuous", "geofault:Continuity", "Semicontinuous", ""),
    ("Cohesion", "bfo:Quality", "Cohesion", "A quality of a rock."),
    ("LargeClastProportion", "bfo:Quality", "Large Clast Proportion", "A quality of a rock."),
    ("FaultMaximumSeparation", "bfo:RelationalQuality", "Fault Maximum Separation",
     "A relational quality of exactly two fault walls of a fault volume, measuring their "
     "maximum separation."),
    # dispositions
    ("Permeability", "bfo:Disposition", "Permeability", "A disposition of a rock."),
    ("Barrier", "bfo:Disposition", "Barrier", "A disposition of a rock to block fluid flow."),
    ("Conduit", "bfo:Disposition", "Conduit", "A disposition of a rock to channel fluid flow."),
    # roles
    ("Protolith", "bfo:Role", "Protolith", "The source-rock role of a rock in a fault core lens."),
    ("Graben", "bfo:Role", "Graben",
     "A role of a fault wall concretizing a horst-and-graben structure (downthrown block)."),
    ("Horst", "bfo:Role", "Horst",
     "A role of a fault wall concretizing a horst-and-graben structure (upthrown block)."),
    ("HangingWall", "bfo:Role", "Hanging Wall",
     "A role of a fault wall realized by its position above the related fault surface."),
    ("FootWall", "bfo:Role", "Foot Wall",
     "A role of a fault wall realized by its position below the related fault surface."),
    ("MajorFault", "bfo:Role", "Major Fault",
     "A role of a fault zone whose displacement is large compared to associated faults."),
    ("MinorFault", "bfo:Role", "Minor Fault",
     "A role of a fault zone whose displacement is small compared to the major fault."),
    ("SyntheticFault", "geofault:MinorFault", "Synthetic Fault",
     "A minor-fault role with direction parallel to the associated major fault."),
    ("AntitheticFault", "geofault:MinorFault", "Antithetic Fault",
     "A minor-fault role with direction conjugate to the associated major fault."),
]

# (local, domain, range, characteristics, inverse, super, label)
_RELATIONS = [
    ("part_of", "bfo:MaterialEntity", "bfo:MaterialEntity",
     ("transitive",), "has_part", None, "is part of"),
    ("has_part", "bfo:MaterialEntity", "bfo:MaterialEntity",
     ("transitive",), "part_of", None, "has part"),
    ("externally_connected_with", "bfo:MaterialEntity", "bfo:MaterialEntity",
     ("symmetric",), None, None, "is externally connected with"),
    ("constituted_by", "bfo:MaterialEntity", "geocore:EarthMaterial",
     (), "constitutes", None, "is made of"),
    ("constitutes", "geocore:EarthMaterial", "bfo:MaterialEntity",
     (), "constituted_by", None, "constitutes"),
    ("generated_by", "bfo:MaterialEntity", "geocore:GeologicalProcess",
     (), "generates", None, "is generated by"),
    ("generates", "geocore:GeologicalProcess", "bfo:MaterialEntity",
     (), "generated_by", None, "generates"),
    ("participates_in", "bfo:Continuant", "bfo:Occurrent",
     (), "has_participant", None, "participates in"),
    ("has_participant", "bfo:Occurrent", "bfo:Continuant",
     (), "participates_in", None, "has participant"),
    ("has_quality", "bfo:IndependentContinuant", "bfo:Quality",
     (), "quality_of", None, "has quality"),
    ("quality_of", "bfo:Quality", "bfo:IndependentContinuant",
     (), "has_quality", None, "is quality of"),
    ("has_role", "bfo:IndependentContinuant", "bfo:Role",
     (), "role_of", None, "has role"),
    ("role_of", "bfo:Role", "bfo:IndependentContinuant",
     (), "has_role", None, "is role of"),
    ("has_disposition", "bfo:IndependentContinuant", "bfo:Disposition",
     (), "disposition_of", None, "has disposition"),
    ("disposition_of", "bfo:Disposition", "bfo:IndependentContinuant",
     (), "has_disposition", None, "is disposition of"),
    ("generically_depends_on", "bfo:GenericallyDependentContinuant", "bfo:IndependentContinuant",
     (), None, None, "generically depends on"),
    ("structure_of", "geocore:GeologicalStructure", "bfo:MaterialEntity",
     (), "has_structure", "bfo:generically_depends_on", "is structure of"),
    ("has_structure", "bfo:MaterialEntity", "geocore:GeologicalStructure",
     (), "structure_of", None, "bears structure"),
    ("concretizes", "bfo:SpecificallyDependentContinuant", "bfo:GenericallyDependentContinuant",
     (), "concretized_by", None, "concretizes"),
    ("concretized_by", "bfo:GenericallyDependentContinuant", "bfo:SpecificallyDependentContinuant",
     (), "concretizes", None, "is concretized by"),
    ("boundary_of", "bfo:ContinuantFiatBoundary", "bfo:MaterialEntity",
     (), "has_boundary", None, "is boundary of"),
    ("has_boundary", "bfo:MaterialEntity", "bfo:ContinuantFiatBoundary",
     (), "boundary_of", None, "has boundary"),
    ("occupies", "bfo:IndependentContinuant", "bfo:SpatialRegion",
     (), "occupied_by", None, "occupies"),
    ("occupied_by", "bfo:SpatialRegion", "bfo:IndependentContinuant",
     (), "occupies", None, "is occupied by"),
    # cross-section spatial relations: strict partial orders
    ("east_of", "bfo:IndependentContinuant", "bfo:IndependentContinuant",
     ("transitive", "irreflexive"), "west_of", None, "is east of"),
    ("west_of", "bfo:IndependentContinuant", "bfo:IndependentContinuant",
     ("transitive", "irreflexive"), "east_of", None, "is west of"),
    ("north_of", "bfo:IndependentContinuant", "bfo:IndependentContinuant",
     ("transitive", "irreflexive"), "south_of", None, "is north of"),
    ("south_of", "bfo:IndependentContinuant", "bfo:IndependentContinuant",
     ("transitive", "irreflexive"), "north_of", None, "is south of"),
    # age relations
    ("older", "bfo:Entity", "bfo:Entity",
     ("transitive", "irreflexive"), "younger", None, "is older than"),
    ("younger", "bfo:Entity", "bfo:Entity",
     ("transitive", "irreflexive"), "older", None, "is younger than"),
    ("coeval", "bfo:Entity", "bfo:Entity",
     ("transitive", "symmetric"), None, None, "is coeval with"),
    # numeric quality magnitude (literal-valued)
    ("has_magnitude", "bfo:Quality", "xsd:decimal",
     (), None, None, "has magnitude"),
]

# Definitional requirements compiled into validation shapes:
# (class, relation, filler, min, max). max None means unbounded.
# The generic rock-volume requirements (host object, bulk rock constitution)
# are deliberately not constrained: their fillers sit outside the annotated
# scene and outside the user-facing vocabulary.
_REQUIREMENTS = [
    ("FaultVolume", "has_part", "FaultWall", 1, None),
    ("FaultVolume", "has_part", "FaultZone", 1, None),
    ("FaultZone", "part_of", "FaultVolume", 1, None),
    ("FaultZone", "participates_in", "BrittleShearDeformation", 1, None),
    ("FaultCore", "part_of", "FaultZone", 1, None),
    ("FaultCore", "generated_by", "BrittleShearDeformation", 1, None),
    ("FaultCore", "constituted_by", "BrittleFaultRock", 1, None),
    ("DamageZone", "part_of", "FaultZone", 1, None),
    ("DamageZone", "externally_connected_with", "FaultCore", 1, None),
    ("DamageZone", "part_of", "FaultWall", 1, None),
    ("FaultWall", "part_of", "FaultVolume", 1, None),
    ("FaultWall", "externally_connected_with", "FaultCore", 1, None),
    ("FaultCoreMembrane", "part_of", "FaultCore", 1, None),
    ("FaultCoreMembrane", "constituted_by", "BrittleFaultRock", 1, None),
    ("FaultCoreMembrane", "has_quality", "Smeared", 1, None),
    ("FaultCoreMembrane", "has_quality", "Continuity", 1, None),
    ("FaultCoreLens", "part_of", "FaultCore", 1, None),
    ("FaultCoreLens", "constituted_by", "geocore:Rock", 1, None),
    ("FaultCoreLens", "has_role", "Protolith", 1, None),
    ("BrittleFaultRock", "generated_by", "BrittleShearDeformation", 1, None),
    ("FaultOrientation", "quality_of", "FaultSurfaceLocation", 1, None),
    ("FaultSurfaceShape", "quality_of", "FaultSurface", 1, None),
    ("FaultSystem", "has_part", "FaultVolume", 2, None),
    ("FaultStructure", "structure_of", "FaultVolume", 1, None),
    ("FaultArrayStructure", "structure_of", "FaultSystem", 1, None),
    ("FaultSystemStructure", "structure_of", "FaultSystem", 1, None),
    ("PhysicalSlipSurface", "part_of", "FaultWall", 1, None),
    ("PhysicalSlipSurface", "externally_connected_with", "FaultCore", 1, None),
    ("SlipSurfaceStructure", "structure_of", "PhysicalSlipSurface", 1, None),
    ("Smeared", "quality_of", "FaultCoreMembrane", 1, None),
    ("Continuity", "quality_of", "FaultCoreMembrane", 1, None),
    ("Cohesion", "quality_of", "geocore:Rock", 1, None),
    ("LargeClastProportion", "quality_of", "geocore:Rock", 1, None),
    ("Permeability", "disposition_of", "geocore:Rock", 1, None),
    ("Barrier", "disposition_of", "geocore:Rock", 1, None),
    ("Conduit", "disposition_of", "geocore:Rock", 1, None),
    ("FaultMaximumSeparation", "quality_of", "FaultWall", 2, 2),
    ("Graben", "role_of", "FaultWall", 1, None),
    ("Graben", "concretizes", "HorstAndGraben", 1, None),
    ("Horst", "role_of", "FaultWall", 1, None),
    ("Horst", "concretizes", "HorstAndGraben", 1, None),
    ("HangingWall", "role_of", "FaultWall", 1, None),
    ("FootWall", "role_of", "FaultWall", 1, None),
    ("MajorFault", "role_of", "FaultZone", 1, None),
    ("MinorFault", "role_of", "FaultZone", 1, None),
]

_DISJOINT = [
    ("bfo:MaterialEntity", "bfo:ImmaterialEntity"),
    ("bfo:Continuant", "bfo:Occurrent"),
]


def _term(qname_or_local: str) -> Term:
    if ":" in qname_or_local:
        ns, local = qname_or_local.split(":", 1)
        return Term(ns, local)
    return geofault(qname_or_local)


def _build() -> Schema:
    classes = []
    for local, parent, label in _BFO:
        classes.append(ClassDef(bfo(local), _term(parent) if parent else None, label))
    for local, parent, label in _GEOCORE:
        classes.append(ClassDef(geocore(local), _term(parent), label))
    for local, parent, label, definition in _GEOFAULT:
        classes.append(ClassDef(geofault(local), _term(parent), label, definition, True))

    relations = []
    for local, dom, rng, chars, inverse, sup, label in _RELATIONS:
        ns = "bfo" if local == "generically_depends_on" else "geofault"
        relations.append(
            RelationDef(
                Term(ns, local),
                _term(dom),
                _term(rng) if rng != "xsd:decimal" else XSD_DECIMAL,
                frozenset(chars),
                geofault(inverse) if inverse else None,
                _term(sup) if sup else None,
                label,
            )
        )

    axioms = []
    for a, b in _DISJOINT:
        axioms.append(Axiom("DisjointClasses", (_term(a), _term(b))))
    for cls, rel, filler, lo, hi in _REQUIREMENTS:
        ops = (_term(cls), geofault(rel), _term(filler))
        if hi is not None:
            axioms.append(Axiom("ExactQualifiedCardinality", ops, hi))
        elif lo > 1:
            axioms.append(Axiom("MinQualifiedCardinality", ops, lo))
        else:
            axioms.append(Axiom("SomeValuesRequirement", ops))

    return Schema(tuple(classes), tuple(relations), tuple(axioms), SCHEMA_VERSION)


@lru_cache(maxsize=1)
def load_builtin_schema() -> Schema:
    return _build()
