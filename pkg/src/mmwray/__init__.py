"""Deterministic indoor 60 GHz link simulator.

Image-method ray tracing over planar scenes with flat metal reflectors,
metal-groove reflectarrays, and absorbing-screen human blockers; wideband
channel synthesis with linear-scale path-loss averaging and power delay
profiles.
"""

from .antenna import AntennaPattern, Orientation, gain_dbi, horn, isotropic, omni
from .channel import (
    PDP,
    ChannelResponse,
    FrequencyPlan,
    average_path_loss,
    normalize_relative,
    pdp,
    peak_delay_ns,
    peak_level_db,
    synthesize,
)
from .diffraction import (
    BlockerScreen,
    FresnelParam,
    fresnel_radius,
    fresnel_v,
    knife_edge_field,
    knife_edge_loss,
    knife_edge_loss_approx,
    screen_blockage_field,
    screen_blockage_loss,
)
from .geometry import (
    Point2,
    Scene,
    Segment,
    SegmentKind,
    Violation,
    intersect,
    mirror,
    validate_scene,
)
from .materials import Material, MaterialModel, dielectric, fixed_loss, perfect_conductor, reflection_coefficient
from .raytrace import (
    AoaSweep,
    CoveragePoint,
    LinkBudgetTerm,
    PropagationPath,
    aoa_sweep,
    coverage_sweep,
    find_paths,
    friis_path_loss,
    make_term,
    path_gain,
)
from .reflectarray import (
    GrooveCell,
    GroovePanel,
    PanelMode,
    ScatterPattern,
    cell_phase,
    design_panel,
    peak_directions,
    scatter_pattern,
    scattered_amplitude,
    scattered_power_fraction,
)
from .scenarios import (
    LCorridorVariant,
    MeetingRoomCase,
    Scenario,
    Terminal,
    builtin_scenario,
    l_corridor,
    load,
    meeting_room,
    save,
    t_corridor,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
