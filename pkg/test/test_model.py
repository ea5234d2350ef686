import math
import pickle
import unittest

import numpy as np

import vvmc

from vvmc         import config
from vvmc.model   import evaluateFeature, logWeights
from vvmc.domains import toyG1, toyG2, toyG3Nec

LN2 = math.log( 2 )
LN3 = math.log( 3 )

class TestModel( unittest.TestCase ):
    def tearDown( self ):
        config.resetDefaults()

    def test_evaluateFeature( self ):
        a = vvmc.Feature( [ ( 0, 1, True ) ], 1.0 )
        self.assertTrue( evaluateFeature( a, ( 1, 0 ) ) )
        g1 = vvmc.Feature( [ ( 0, 1, True ), ( 1, 0, False ) ], 1.0 )
        self.assertTrue( evaluateFeature( g1, ( 0, 1 ) ) )
        b = vvmc.Feature( [ ( 1, 1, True ), ( 1, 2, True ) ], 1.0 )
        self.assertFalse( evaluateFeature( b, ( 0, 0 ) ) )
        conj = vvmc.Feature( [ ( 0, 1, True ), ( 1, 0, True ) ], 1.0, vvmc.MODE_CONJUNCTIVE )
        self.assertTrue( evaluateFeature( conj, ( 1, 0 ) ) )
        self.assertFalse( evaluateFeature( conj, ( 1, 1 ) ) )

    def test_logWeight( self ):
        self.assertAlmostEqual( vvmc.logWeight( toyG3Nec( LN2 ), ( 1, 1 ) ), 2 * LN2, places=12 )
        self.assertEqual( vvmc.logWeight( vvmc.GraphicalModel( [ ( "a", 2 ) ] ), ( 1, ) ), 0.0 )
        self.assertAlmostEqual( vvmc.logWeight( toyG1( LN2, LN3 ), ( 1, 0 ) ), LN2, places=12 )

    def test_hardWeight( self ):
        G = vvmc.GraphicalModel( [ ( "a", 2 ) ], [ vvmc.Feature( [ ( 0, 1, True ) ], vvmc.HARD ) ] )
        self.assertEqual( vvmc.logWeight( G, ( 1, ) ), 30.0 )
        config.setHardWeight( 5.0 )
        self.assertEqual( vvmc.logWeight( G, ( 1, ) ), 5.0 )
        scores = logWeights( G, G.statesArray() )
        self.assertEqual( scores[0], -math.inf )
        self.assertEqual( scores[1], 0.0 )
        with self.assertRaises( vvmc.ConfigError ):
            config.setHardWeight( math.inf )

    def test_exactDistribution( self ):
        P = vvmc.exactDistribution( toyG3Nec( LN2 ) )
        expected = {
            ( 0, 0 ): 1 / 15, ( 1, 0 ): 2 / 15, ( 0, 1 ): 2 / 15, ( 0, 2 ): 2 / 15, ( 1, 1 ): 4 / 15, ( 1, 2 ): 4 / 15
        }
        for s, p in expected.items():
            self.assertAlmostEqual( P[s], p, places=12 )

        P = vvmc.exactDistribution( vvmc.GraphicalModel( [ ( "a", 2 ) ] ) )
        self.assertAlmostEqual( P[( 0, )], 0.5 )
        self.assertAlmostEqual( P[( 1, )], 0.5 )

        P = vvmc.exactDistribution( toyG1( LN2, LN3 ) )
        for s, p in { ( 0, 0 ): 6 / 17, ( 1, 1 ): 6 / 17, ( 1, 0 ): 2 / 17, ( 0, 1 ): 3 / 17 }.items():
            self.assertAlmostEqual( P[s], p, places=12 )

    def test_unsatisfiable( self ):
        G = vvmc.GraphicalModel( [ ( "a", 2 ) ], [
            vvmc.Feature( [ ( 0, 1, True ) ], vvmc.HARD ),
            vvmc.Feature( [ ( 0, 0, True ) ], vvmc.HARD )
        ] )
        with self.assertRaises( vvmc.UnsatisfiableModel ):
            vvmc.exactDistribution( G )
        #Soft hard weights keep every state possible
        P = vvmc.exactDistribution( G, hardWeight=30.0 )
        self.assertAlmostEqual( P[( 0, )], 0.5 )

    def test_emptyHardFeature( self ):
        #An empty clause is never satisfied; an empty conjunction always is
        G = vvmc.GraphicalModel( [ ( "a", 2 ), ( "b", 2 ) ], [ vvmc.Feature( [ ( 0, 1, True ) ], 1.0 ), vvmc.Feature( [], vvmc.HARD ) ] )
        with self.assertRaises( vvmc.UnsatisfiableModel ):
            vvmc.exactDistribution( G )
        with self.assertRaises( vvmc.UnsatisfiableModel ):
            vvmc.exactMarginals( G )
        soft = vvmc.exactMarginals( G, hardWeight=30.0 )
        expected = vvmc.exactDistribution( G, hardWeight=30.0 ).marginals()
        for p, q in zip( soft, expected ):
            np.testing.assert_allclose( p, q, atol=1e-12 )
        H = vvmc.GraphicalModel( [ ( "a", 2 ) ], [ vvmc.Feature( [], vvmc.HARD, vvmc.MODE_CONJUNCTIVE ) ], vvmc.MODE_CONJUNCTIVE )
        np.testing.assert_allclose( vvmc.exactMarginals( H )[0], [ 0.5, 0.5 ] )

    def test_pickle( self ):
        #Models cross process boundaries when experiments run in parallel
        for G in ( toyG1(), toyG2( 1.0, 2.0 ), toyG3Nec( LN2 ) ):
            H = pickle.loads( pickle.dumps( G ) )
            self.assertEqual( H, G )
            self.assertEqual( H.features[0].literals, G.features[0].literals )
            self.assertIsInstance( H.features[0].literals[0], vvmc.Literal )
            self.assertEqual( H.features[0].literals[0].positive, G.features[0].literals[0].positive )

    def test_stateSpaceTooLarge( self ):
        G = vvmc.GraphicalModel( [ ( "X{:d}".format( i ), 2 ) for i in range( 12 ) ] )
        with self.assertRaises( vvmc.StateSpaceTooLarge ) as cm:
            vvmc.exactDistribution( G, cap=1000 )
        self.assertEqual( cm.exception.exitCode, 3 )

    def test_exactMarginals( self ):
        m = vvmc.exactMarginals( toyG3Nec( LN2 ) )
        self.assertAlmostEqual( m[0][1], 10 / 15, places=12 )
        m = vvmc.exactMarginals( vvmc.GraphicalModel( [ ( "a", 2 ), ( "b", 3 ) ] ) )
        np.testing.assert_allclose( m[1], [ 1 / 3 ] * 3 )
        for row in vvmc.exactMarginals( toyG2( 0.7, 0.7 ) ):
            np.testing.assert_allclose( row, [ 0.5, 0.5 ] )

    def test_exactMarginalsFactorize( self ):
        #Twenty independent pairs: too many states to enumerate at once, but each component is tiny
        variables = [ ( "X{:d}".format( i ), 2 ) for i in range( 40 ) ]
        features = [ vvmc.Feature( [ ( 2 * k, 1, True ), ( 2 * k + 1, 1, True ) ], 1.0 ) for k in range( 20 ) ]
        G = vvmc.GraphicalModel( variables, features )
        self.assertEqual( len( G.components() ), 20 )
        m = vvmc.exactMarginals( G, cap=16 )
        e = math.e
        np.testing.assert_allclose( m[7], [ ( 1 + e ) / ( 1 + 3 * e ), 2 * e / ( 1 + 3 * e ) ] )

    def test_canonical( self ):
        #A clause mentioning both values of a Boolean variable is always true
        G = vvmc.GraphicalModel( [ ( "a", 2 ), ( "b", 2 ) ], [ vvmc.Feature( [ ( 0, 0, True ), ( 0, 1, True ), ( 1, 1, True ) ], 2.0 ) ] )
        H = vvmc.GraphicalModel( [ ( "a", 2 ), ( "b", 2 ) ], [ vvmc.Feature( [ ( 1, 0, True ), ( 1, 1, True ) ], 2.0 ) ] )
        self.assertEqual( G, H )
        #!b=0 and b=1 are the same literal on a Boolean variable
        G = vvmc.GraphicalModel( [ ( "a", 2 ), ( "b", 2 ) ], [ vvmc.Feature( [ ( 0, 1, True ), ( 1, 0, False ) ], 1.0 ) ] )
        H = vvmc.GraphicalModel( [ ( "a", 2 ), ( "b", 2 ) ], [ vvmc.Feature( [ ( 1, 1, True ), ( 0, 1, True ) ], 1.0 + 1e-12 ) ] )
        self.assertEqual( G, H )
        self.assertEqual( hash( G ), hash( H ) )
        self.assertNotEqual( G, toyG1() )

    def test_invalidModels( self ):
        with self.assertRaises( vvmc.ModelFormatError ):
            vvmc.GraphicalModel( [ ( "a", 2 ) ], [ vvmc.Feature( [ ( 0, 2, True ) ], 1.0 ) ] )
        with self.assertRaises( vvmc.ModelFormatError ):
            vvmc.GraphicalModel( [ ( "a", 2 ), ( "a", 2 ) ] )
        with self.assertRaises( vvmc.ModelFormatError ):
            vvmc.GraphicalModel( [ ( "a=b", 2 ) ] )
        with self.assertRaises( vvmc.ModelFormatError ):
            vvmc.GraphicalModel( [ ( "a", 2 ) ], [ vvmc.Feature( [ ( 0, 1, True ) ], 1.0, vvmc.MODE_CONJUNCTIVE ) ] )
        with self.assertRaises( vvmc.ModelFormatError ):
            vvmc.Feature( [ ( 0, 1, True ) ], float( "nan" ) )

    def test_vvIndex( self ):
        G = toyG3Nec()
        self.assertEqual( G.vvCount(), 5 )
        self.assertEqual( G.vvIndex( 1, 2 ), 4 )
        self.assertEqual( G.vvPair( 2 ), ( 1, 0 ) )
        self.assertEqual( G.stateIndex( ( 1, 2 ) ), 5 )
        self.assertEqual( list( G.iterStates() )[5], ( 1, 2 ) )

    def test_print( self ):
        lines = []
        toyG3Nec( 0.5 ).print( fn=lines.append )
        self.assertEqual( lines, [
            "GraphicalModel( clausal ): 2 variables, 2 features {",
            "    var a 2",
            "    var b 3",
            "    feature 0.5 a=1",
            "    feature 0.5 b=1 b=2",
            "}"
        ] )
        self.assertEqual( toyG3Nec( 0.5 ).sprint( 1 ).count( "..." ), 2 )

if __name__ == "__main__":
    unittest.main()
