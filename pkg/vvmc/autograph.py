"""
Colored graphs of graphical models and their automorphism groups.

G_V (buildVariableGraph) has a node per literal of each Boolean variable plus a node per feature;
its automorphisms are the variable symmetries of the model.
G_VV (buildVvGraph) has a node per variable-value pair, an exactly-one ("mutex") node per variable and a node per feature;
its automorphisms restricted to the variable-value nodes are VV symmetries.

Automorphisms are computed by color refinement followed by individualization-refinement search.
"""
import logging

from io import StringIO

from vvmc            import config
from vvmc.shared     import NonBooleanVariable, InvalidLift, SearchBudgetExceeded, roundWeight
from vvmc.permgroup  import Permutation, GeneratorSet, orbit
from vvmc.symmetry   import VVPermutation

logger = logging.getLogger( __name__ )

#Node kinds
NODE_LITERAL = "literal"
NODE_VV      = "vv-pair"
NODE_FEATURE = "feature"
NODE_MUTEX   = "mutex-feature"

#Colors in G_VV. Feature colors start at FIRST_FEATURE_COLOR, one per weight class.
#The mutex color is reserved for the exactly-one nodes and never assigned to a weight.
VV_COLOR            = 0
MUTEX_COLOR         = 1
FIRST_FEATURE_COLOR = 2

#Colors in G_V
ZERO_LITERAL_COLOR = 0
ONE_LITERAL_COLOR  = 1

class ColoredGraph:
    """
    A vertex-colored undirected graph without self-loops.

    adjacency[u] is the sorted tuple of u's neighbours and colors[u] its color.
    Colors are relabelled to be dense (0..C-1) while keeping their order.
    nodeKind[u] and nodePayload[u] describe what node u stands for (e.g. NODE_VV and a ( var, value ) pair).
    """
    __slots__ = ( "nNodes", "adjacency", "colors", "nodeKind", "nodePayload", "_edges" )

    def __init__( self, nNodes, edges, colors, nodeKind=None, nodePayload=None ):
        if len( colors ) != nNodes:
            raise ValueError( "Expected {:d} colors, received {:d}.".format( nNodes, len( colors ) ) )
        adjacency = [ set() for _ in range( nNodes ) ]
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError( "Self-loop on node {:d}.".format( u ) )
            adjacency[u].add( v )
            adjacency[v].add( u )
            es.add( ( min( u, v ), max( u, v ) ) )
        palette = { c: i for i, c in enumerate( sorted( set( colors ) ) ) }
        self.nNodes      = nNodes
        self.adjacency   = tuple( tuple( sorted( a ) ) for a in adjacency )
        self.colors      = tuple( palette[c] for c in colors )
        self.nodeKind    = tuple( nodeKind ) if nodeKind is not None else ( None, ) * nNodes
        self.nodePayload = tuple( nodePayload ) if nodePayload is not None else ( None, ) * nNodes
        self._edges      = frozenset( es )

    def edges( self ):
        """Return the edges as a sorted list of ( u, v ) pairs with u < v."""
        return sorted( self._edges )

    def hasEdge( self, u, v ):
        return ( min( u, v ), max( u, v ) ) in self._edges

    def isAutomorphism( self, perm ):
        """Return True if perm preserves colors and maps edges onto edges."""
        if len( perm ) != self.nNodes:
            return False
        colors = self.colors
        if any( colors[perm[u]] != colors[u] for u in range( self.nNodes ) ):
            return False
        edges = self._edges
        for u, v in edges:
            a, b = perm[u], perm[v]
            if ( ( a, b ) if a < b else ( b, a ) ) not in edges:
                return False
        return True

    def dump( self, out ):
        """
        Writes the graph in a DIMACS-like format to the writable text file-like object out:
            p edge <nodes> <edges>
            n <node> <color>     one line per node (nodes are 1-based)
            e <u> <v>            one line per edge
        """
        out.write( "p edge {:d} {:d}\n".format( self.nNodes, len( self._edges ) ) )
        for u, c in enumerate( self.colors ):
            out.write( "n {:d} {:d}\n".format( u + 1, c ) )
        for u, v in self.edges():
            out.write( "e {:d} {:d}\n".format( u + 1, v + 1 ) )

    def dumps( self ):
        with StringIO() as out:
            self.dump( out )
            return out.getvalue()

    def __repr__( self ):
        return "ColoredGraph( {:d} nodes, {:d} edges, {:d} colors )".format( self.nNodes, len( self._edges ), len( set( self.colors ) ) )

class StableColoring:
    """The fixpoint of color refinement: a dense coloring and the number of rounds that split a cell."""
    __slots__ = ( "colors", "roundCount" )

    def __init__( self, colors, roundCount ):
        self.colors     = tuple( colors )
        self.roundCount = roundCount

    def cells( self ):
        """Return the color classes as tuples of nodes, indexed by color."""
        out = [ [] for _ in range( len( set( self.colors ) ) ) ]
        for u, c in enumerate( self.colors ):
            out[c].append( u )
        return [ tuple( c ) for c in out ]

def _weightColors( features, first, distinct ):
    """
    Returns a color for each feature.
    Features share a color iff their rounded weights are equal (HARD is its own class), unless distinct is True,
    in which case every feature gets its own color.
    """
    if distinct:
        return [ first + j for j in range( len( features ) ) ]
    classes = sorted( { roundWeight( f.weight ) for f in features } )
    index = { w: first + i for i, w in enumerate( classes ) }
    return [ index[roundWeight( f.weight )] for f in features ]

def buildVariableGraph( G ):
    """
    Builds G_V: two nodes for each (Boolean) variable, one per literal, and a node for each feature.

    Node 2i is the 0-literal of variable i and node 2i+1 its 1-literal; they're joined by an edge.
    Feature j is node 2n+j, adjacent to the literal nodes of the values that make its literals on each variable true.
    All 0-literals share one color, all 1-literals another, and features are colored by weight class.
    Raises NonBooleanVariable if a variable doesn't have exactly two values.
    """
    for v in G.variables:
        if v.cardinality != 2:
            raise NonBooleanVariable( v.name, v.cardinality )
    n = G.n
    total = 2 * n + G.m
    edges = [ ( 2 * i, 2 * i + 1 ) for i in range( n ) ]
    colors = [ ZERO_LITERAL_COLOR, ONE_LITERAL_COLOR ] * n
    kinds = [ NODE_LITERAL ] * ( 2 * n )
    payload = [ ( i, x ) for i in range( n ) for x in ( 0, 1 ) ]
    cards = G.cardinalities
    for j, ( f, c ) in enumerate( zip( G.features, _weightColors( G.features, FIRST_FEATURE_COLOR, False ) ) ):
        node = 2 * n + j
        for var, values in f.valueSets( cards ).items():
            for x in values:
                edges.append( ( 2 * var + x, node ) )
        colors.append( c )
        kinds.append( NODE_FEATURE )
        payload.append( j )
    return ColoredGraph( total, edges, colors, kinds, payload )

def buildVvGraph( G, distinctFeatureColors=False, valueColors=False ):
    """
    Builds G_VV.

    Node offset_i + v stands for the pair (X_i, v), so variable-value nodes are numbered exactly like VV indices (see GraphicalModel.vvIndex).
    Then come one mutex node per variable, adjacent to all of its variable-value nodes,
    and one node per feature, adjacent to the variable-value nodes of the values that make its literals on each variable true.
    A negative literal X!=v therefore connects to every node of X except (X, v).

    All variable-value nodes share VV_COLOR, mutex nodes have MUTEX_COLOR and features are colored by weight class from FIRST_FEATURE_COLOR.
    distinctFeatureColors gives every feature its own color, which pins every feature node.
    valueColors colors each variable-value node by its value instead (shifting the mutex and feature colors up),
    so automorphisms can only permute variables.
    """
    V = G.vvCount()
    n = G.n
    edges = []
    if valueColors:
        top = max( G.cardinalities, default=0 )
        colors = [ x for i in range( n ) for x in range( G.variables[i].cardinality ) ]
        mutexColor = top
        firstFeature = top + 1
    else:
        colors = [ VV_COLOR ] * V
        mutexColor = MUTEX_COLOR
        firstFeature = FIRST_FEATURE_COLOR
    kinds = [ NODE_VV ] * V
    payload = [ ( i, x ) for i in range( n ) for x in range( G.variables[i].cardinality ) ]
    for i in range( n ):
        node = V + i
        for x in range( G.variables[i].cardinality ):
            edges.append( ( G.vvIndex( i, x ), node ) )
        colors.append( mutexColor )
        kinds.append( NODE_MUTEX )
        payload.append( i )
    cards = G.cardinalities
    for j, ( f, c ) in enumerate( zip( G.features, _weightColors( G.features, firstFeature, distinctFeatureColors ) ) ):
        node = V + n + j
        for var, values in f.valueSets( cards ).items():
            for x in values:
                edges.append( ( G.vvIndex( var, x ), node ) )
        colors.append( c )
        kinds.append( NODE_FEATURE )
        payload.append( j )
    return ColoredGraph( V + n + G.m, edges, colors, kinds, payload )

def _refine( adjacency, colors ):
    """
    Refines colors until two nodes share a color iff they had the same color and the same multiset of neighbour colors.
    New colors are numbered by sorted signature, so the result only depends on the graph up to isomorphism
    and never reorders existing cells.
    Returns the refined colors and the number of rounds that split a cell.
    """
    count = len( set( colors ) )
    rounds = 0
    while True:
        sigs = [ ( colors[u], tuple( sorted( colors[w] for w in adj ) ) ) for u, adj in enumerate( adjacency ) ]
        index = { s: i for i, s in enumerate( sorted( set( sigs ) ) ) }
        colors = [ index[s] for s in sigs ]
        if len( index ) == count:
            return colors, rounds
        count = len( index )
        rounds += 1

def colorRefinement( g ):
    """Return the StableColoring obtained by refining the colors of g."""
    colors, rounds = _refine( g.adjacency, list( g.colors ) )
    return StableColoring( colors, rounds )

class _Search:
    """
    Individualization-refinement search for automorphism generators.

    The first path individualizes, at each level, the lowest node of the target cell (the smallest non-singleton cell,
    ties broken by lowest color) until the coloring is discrete. Levels are then revisited deepest first; for every other
    node w of the level's target cell that isn't already in the orbit of the first path's choice under the generators found
    so far, the subtree below w is searched for a leaf equivalent to the first leaf. Each equivalent leaf gives an
    automorphism, which is verified before it's kept.
    Subtrees whose cell sizes differ from the first path's at the same depth are pruned.
    """
    def __init__( self, g, budget ):
        self.g = g
        self.budget = budget
        self.nodes = 0

    def refine( self, colors ):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded( self.nodes, self.budget )
        return _refine( self.g.adjacency, colors )[0]

    def individualize( self, colors, w ):
        keys = [ ( c, 1 if u == w else 0 ) for u, c in enumerate( colors ) ]
        index = { k: i for i, k in enumerate( sorted( set( keys ) ) ) }
        return self.refine( [ index[k] for k in keys ] )

    @staticmethod
    def profile( colors ):
        sizes = [ 0 ] * ( max( colors ) + 1 if colors else 0 )
        for c in colors:
            sizes[c] += 1
        return tuple( sizes )

    @staticmethod
    def targetCell( colors, profile ):
        best = None
        for c, size in enumerate( profile ):
            if size > 1 and ( best is None or size < profile[best] ):
                best = c
        if best is None:
            return None
        return [ u for u, c in enumerate( colors ) if c == best ]

    def run( self ):
        g = self.g
        colors = self.refine( list( g.colors ) )
        path = []
        self.profiles = []
        while True:
            prof = self.profile( colors )
            self.profiles.append( prof )
            cell = self.targetCell( colors, prof )
            if cell is None:
                break
            path.append( ( colors, cell, cell[0] ) )
            colors = self.individualize( colors, cell[0] )
        self.leaf = colors
        logger.debug( "First path has depth %d", len( path ) )

        gens = []
        for depth in range( len( path ) - 1, -1, -1 ):
            colors, cell, v = path[depth]
            known = set( orbit( v, gens, cap=g.nNodes ) )
            rejected = set()
            for w in cell:
                if w in known or w in rejected:
                    continue
                gamma = self.search( self.individualize( colors, w ), depth + 1 )
                if gamma is None:
                    rejected.update( orbit( w, gens, cap=g.nNodes ) )
                else:
                    gens.append( gamma )
                    known = set( orbit( v, gens, cap=g.nNodes ) )
        logger.debug( "Automorphism search visited %d nodes, found %d generators", self.nodes, len( gens ) )
        return gens

    def search( self, colors, depth ):
        prof = self.profile( colors )
        if depth >= len( self.profiles ) or prof != self.profiles[depth]:
            return None
        cell = self.targetCell( colors, prof )
        if cell is None:
            inverse = [ 0 ] * len( colors )
            for u, c in enumerate( colors ):
                inverse[c] = u
            gamma = Permutation( inverse[c] for c in self.leaf )
            return gamma if self.g.isAutomorphism( gamma ) else None
        for w in cell:
            gamma = self.search( self.individualize( colors, w ), depth + 1 )
            if gamma is not None:
                return gamma
        return None

def automorphismGenerators( g, budget=None ):
    """
    Returns a GeneratorSet (over the nodes of g) generating the group of color-preserving automorphisms of g.
    Raises SearchBudgetExceeded if the search visits more than budget nodes (default config.getSearchBudget()).
    """
    if budget is None:
        budget = config.getSearchBudget()
    if g.nNodes == 0:
        return GeneratorSet( 0 )
    return GeneratorSet( g.nNodes, _Search( g, budget ).run() )

def liftToVv( nodePerm, g, G ):
    """
    Restricts an automorphism of g = buildVvGraph( G ) to its variable-value nodes and returns it as a VVPermutation of G.
    Raises InvalidLift if a variable-value node is mapped to another kind of node, or the restriction is not a valid VV permutation.
    """
    V = G.vvCount()
    for u in range( V ):
        if g.nodeKind[nodePerm[u]] != NODE_VV:
            raise InvalidLift( G.vvPair( u ), g.nodeKind[nodePerm[u]] )
    phi = VVPermutation( G.cardinalities, nodePerm[:V] )
    if not phi.isValid():
        raise InvalidLift( "*", "a pair of another variable" )
    return phi

def vvSymmetries( G, budget=None ):
    """Return the generators of G's VV symmetry group (from G_VV) as a list of VVPermutations."""
    g = buildVvGraph( G )
    return [ liftToVv( p, g, G ) for p in automorphismGenerators( g, budget ) ]

def variableSymmetries( G, budget=None ):
    """
    Returns generators of G's variable symmetry group as a GeneratorSet over variable ids.

    All-Boolean models use G_V. Multi-valued models use G_VV with value-colored variable-value nodes,
    whose automorphisms are exactly the variable permutations that map the model onto itself.
    """
    if G.isBoolean():
        g = buildVariableGraph( G )
        return GeneratorSet( G.n, ( [ p[2 * i] // 2 for i in range( G.n ) ] for p in automorphismGenerators( g, budget ) ) )
    g = buildVvGraph( G, valueColors=True )
    return GeneratorSet( G.n, ( liftToVv( p, g, G ).varImage() for p in automorphismGenerators( g, budget ) ) )
