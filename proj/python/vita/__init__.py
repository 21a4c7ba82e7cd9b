"""Georeferenced biography timelines.

Parse VITA biographies, resolve places against an offline gazetteer and
emit KML placemarks, GeoJSON or itinerary tables.
"""

from ._vita import (
    EARTH_RADIUS_KM,
    Biography,
    BoundingBox,
    CalendarDate,
    DateInterval,
    EmitError,
    GazetteerEntry,
    GeoPoint,
    ItineraryLeg,
    LifeEvent,
    ParseError,
    RouteStats,
    UnknownPlace,
    bounding_box,
    build_itinerary,
    emit_geojson,
    emit_itinerarium,
    emit_kml,
    from_day_number,
    haversine_km,
    load_gazetteer,
    newton_corpus,
    normalize_key,
    parse_biography,
    parse_date_expr,
    resolve,
    route_stats,
    schiaparelli_corpus,
    serialize_biography,
    timeline_bucket,
    to_day_number,
    validate_biography,
)

__all__ = [name for name in dir() if not name.startswith("_")]
