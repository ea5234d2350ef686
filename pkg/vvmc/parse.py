import math

from io import StringIO

from vvmc.shared import ModelFormatError, MODE_NAMES, HARD, HARD_TOKEN

class _StopParsingModel( Exception ):
    """This exception is raised when a model handler requests for the parser to stop."""
    pass

def parse( source, handler ):
    """
    Provides SAX-like parsing of the text model format.

    The format has one statement per line; everything after a '#' is a comment:
        mode clausal|conjunctive
        var <name> <cardinality>
        feature <weight|HARD> <lit> [<lit> ...]
    where each <lit> is "name=value" or "!name=value".

    As statements are parsed from source, parse calls the corresponding methods on the given handler (mode(), var(), feature()).
    parse only checks syntax; resolving names and checking ranges is up to the handler (see ModelBuilder).

    source can be the path of the file to read from (as a str), or a readable text file-like object.
    handler is expected to implement the methods defined in ModelHandler.

    If a handler method raises an exception, the exception will continue to propagate through parse().

    Returns True if the entire document was parsed.
    Returns False if the handler called .stop().
    """
    if isinstance( source, str ):
        with open( source, "r" ) as file:
            return _parseImpl( file, handler )
    return _parseImpl( source, handler )

def parseString( text, handler ):
    """Same as parse(), but reads the model from the given str."""
    return _parseImpl( StringIO( text ), handler )

def _parseImpl( input, handler ):
    """
    Implementation of parse().
    See help( parse ) for further documentation.
    """
    try:
        handler.start()
        for lineno, line in enumerate( input, 1 ):
            tokens = line.split( "#", 1 )[0].split()
            if not tokens:
                continue
            statement = tokens[0]
            if statement == "mode":
                parseMode( tokens, lineno, handler )
            elif statement == "var":
                parseVar( tokens, lineno, handler )
            elif statement == "feature":
                parseFeature( tokens, lineno, handler )
            else:
                raise ModelFormatError( lineno, "Unknown statement \"{}\".".format( statement ) )
        handler.end()
    except _StopParsingModel:
        return False
    return True

def parseMode( tokens, lineno, handler ):
    """
    Parses "mode clausal|conjunctive".
    Calls handler.mode() and passes the mode (MODE_CLAUSAL or MODE_CONJUNCTIVE) and lineno.
    """
    if len( tokens ) != 2 or tokens[1] not in MODE_NAMES:
        raise ModelFormatError( lineno, "Expected \"mode clausal\" or \"mode conjunctive\"." )
    handler.mode( MODE_NAMES.index( tokens[1] ), lineno )

def parseVar( tokens, lineno, handler ):
    """
    Parses "var <name> <cardinality>".
    Calls handler.var() and passes the name, the cardinality (an int) and lineno.
    """
    if len( tokens ) != 3:
        raise ModelFormatError( lineno, "Expected \"var <name> <cardinality>\"." )
    handler.var( tokens[1], parseInt( tokens[2], lineno ), lineno )

def parseFeature( tokens, lineno, handler ):
    """
    Parses "feature <weight|HARD> <lit> [<lit> ...]".
    Calls handler.feature() and passes the weight (a float, or HARD), a list of ( name, value, positive ) tuples and lineno.
    """
    if len( tokens ) < 3:
        raise ModelFormatError( lineno, "Expected \"feature <weight> <literal> [<literal> ...]\"." )
    handler.feature( parseWeight( tokens[1], lineno ), [ parseLiteral( t, lineno ) for t in tokens[2:] ], lineno )

def parseWeight( token, lineno ):
    """Returns the weight written as token: HARD for "HARD", otherwise a finite float."""
    if token == HARD_TOKEN:
        return HARD
    try:
        w = float( token )
    except ValueError:
        raise ModelFormatError( lineno, "Invalid weight \"{}\".".format( token ) )
    if not math.isfinite( w ):
        raise ModelFormatError( lineno, "Weight \"{}\" is not finite; use {} for hard features.".format( token, HARD_TOKEN ) )
    return w

def parseLiteral( token, lineno ):
    """Returns the ( name, value, positive ) tuple written as token ("name=value" or "!name=value")."""
    positive = not token.startswith( "!" )
    body = token if positive else token[1:]
    name, sep, value = body.partition( "=" )
    if not sep or not name:
        raise ModelFormatError( lineno, "Invalid literal \"{}\"; expected name=value or !name=value.".format( token ) )
    return ( name, parseInt( value, lineno ), positive )

def parseInt( token, lineno ):
    try:
        return int( token )
    except ValueError:
        raise ModelFormatError( lineno, "Expected an integer, not \"{}\".".format( token ) )

def read( source ):
    """
    Parses a model in the text model format from source and returns it as a GraphicalModel.
    source can be the path of the file to read from (as a str), or a readable text file-like object.
    """
    #Imported here; vvmc.handler imports _StopParsingModel from this module
    from vvmc.handler import ModelBuilder
    builder = ModelBuilder()
    parse( source, builder )
    return builder.model

def loads( text ):
    """Parses a model from the given str and returns it as a GraphicalModel."""
    from vvmc.handler import ModelBuilder
    builder = ModelBuilder()
    parseString( text, builder )
    return builder.model
