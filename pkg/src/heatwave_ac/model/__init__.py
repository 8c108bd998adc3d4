"""
Demand model package for heatwave-ac.

This package contains the spatial, demographic, presence, activation, demand
and statistics building blocks of the simulation.
"""

from .activation import ActivationParams, activation_curve, activation_probability
from .demand import (
    CellDemandSeries,
    CellDemandTable,
    NationalDemandSeries,
    ScenarioParams,
    TemperatureSeries,
    cell_demand,
    national_demand,
    peak,
)
from .demographics import (
    DemographicGroup,
    DemographicHouseholds,
    DistributionMatrix,
    default_matrix,
    distribute,
    validate_matrix,
)
from .geo import (
    GeoPoint,
    GridCell,
    StationAssignment,
    WeatherStation,
    assign_stations,
    haversine_distance,
)
from .presence import PresenceProfile, default_profiles, load_profiles, presence
from .stats import HourlyDistribution, hourly_distribution, relative_increase, top_cells

__all__ = [
    "ActivationParams",
    "activation_curve",
    "activation_probability",
    "CellDemandSeries",
    "CellDemandTable",
    "NationalDemandSeries",
    "ScenarioParams",
    "TemperatureSeries",
    "cell_demand",
    "national_demand",
    "peak",
    "DemographicGroup",
    "DemographicHouseholds",
    "DistributionMatrix",
    "default_matrix",
    "distribute",
    "validate_matrix",
    "GeoPoint",
    "GridCell",
    "StationAssignment",
    "WeatherStation",
    "assign_stations",
    "haversine_distance",
    "PresenceProfile",
    "default_profiles",
    "load_profiles",
    "presence",
    "HourlyDistribution",
    "hourly_distribution",
    "relative_increase",
    "top_cells",
]
