import os
import math

from vvmc.shared import (
    ConfigError,
    DEFAULT_HARD_WEIGHT, DEFAULT_STATE_CAP, DEFAULT_ORBIT_CAP, DEFAULT_SEARCH_BUDGET, DEFAULT_RENAMING_CAP
)

#Current settings. A setting that is None hasn't been set yet;
#it is filled in from the environment (VVMC_<NAME>) or the built-in default the first time it's read.
_settings = {
    "HARD_WEIGHT":   None,
    "STATE_CAP":     None,
    "ORBIT_CAP":     None,
    "SEARCH_BUDGET": None,
    "RENAMING_CAP":  None
}

_defaults = {
    "HARD_WEIGHT":   DEFAULT_HARD_WEIGHT,
    "STATE_CAP":     DEFAULT_STATE_CAP,
    "ORBIT_CAP":     DEFAULT_ORBIT_CAP,
    "SEARCH_BUDGET": DEFAULT_SEARCH_BUDGET,
    "RENAMING_CAP":  DEFAULT_RENAMING_CAP
}

def _checkCap( name, value ):
    try:
        value = int( value )
    except ( TypeError, ValueError ):
        raise ConfigError( "{} must be an integer, not {!r}.".format( name, value ) )
    if value <= 0:
        raise ConfigError( "{} must be positive, not {:d}.".format( name, value ) )
    return value

def _checkWeight( name, value ):
    try:
        value = float( value )
    except ( TypeError, ValueError ):
        raise ConfigError( "{} must be a number, not {!r}.".format( name, value ) )
    if not math.isfinite( value ):
        raise ConfigError( "{} must be finite.".format( name ) )
    return value

_checks = {
    "HARD_WEIGHT":   _checkWeight,
    "STATE_CAP":     _checkCap,
    "ORBIT_CAP":     _checkCap,
    "SEARCH_BUDGET": _checkCap,
    "RENAMING_CAP":  _checkCap
}

def _set( name, value ):
    _settings[name] = _checks[name]( name, value )

def _get( name ):
    value = _settings[name]
    if value is None:
        env = os.environ.get( "VVMC_" + name )
        _set( name, _defaults[name] if env is None else env )
        value = _settings[name]
    return value

def resetDefaults():
    """
    Forgets every value set with the set*() functions below.
    The next get*() call re-reads the environment or falls back to the built-in default.
    """
    for name in _settings:
        _settings[name] = None

def setHardWeight( weight ):
    """
    Sets the finite weight samplers substitute for HARD features.
    Exact oracles are unaffected; they always treat HARD as infinite.
    """
    _set( "HARD_WEIGHT", weight )

def getHardWeight():
    """Return the weight samplers use for HARD features (default 30, or $VVMC_HARD_WEIGHT)."""
    return _get( "HARD_WEIGHT" )

def setStateCap( cap ):
    """Sets the largest state space exact enumeration will accept."""
    _set( "STATE_CAP", cap )

def getStateCap():
    """Return the largest state space exact enumeration will accept (default 2^20, or $VVMC_STATE_CAP)."""
    return _get( "STATE_CAP" )

def setOrbitCap( cap ):
    """Sets the largest orbit (or group) that will be enumerated by breadth-first search."""
    _set( "ORBIT_CAP", cap )

def getOrbitCap():
    return _get( "ORBIT_CAP" )

def setSearchBudget( budget ):
    """Sets the number of search tree nodes the automorphism search may visit before giving up."""
    _set( "SEARCH_BUDGET", budget )

def getSearchBudget():
    return _get( "SEARCH_BUDGET" )

def setRenamingCap( cap ):
    """Sets the largest number of per-variable value renamings the taxonomy classifier will enumerate."""
    _set( "RENAMING_CAP", cap )

def getRenamingCap():
    return _get( "RENAMING_CAP" )
