import math
import unittest

import numpy as np

import vvmc

from vvmc.symmetry  import (
    VVPermutation, isValidVv, applyVvToState, applyVvToModel, isVvSymmetry, embedVariableSymmetry, isCountSymmetry,
    isRenamableToCount, classifyTaxonomy, stateOrbits, equalProbabilityPartition,
    LABEL_COUNT, LABEL_SRV_COUNT, LABEL_URV_COUNT, LABEL_EQUICARDINAL, LABEL_NON_EQUICARDINAL
)
from vvmc.autograph import vvSymmetries, variableSymmetries
from vvmc.domains   import toyG1, toyG2, toyG3Nec, toyXor, RingSpec, genRing

LN2 = math.log( 2 )
LN3 = math.log( 3 )

def g1Phi( G ):
    return VVPermutation.fromPairs( G, { ( "a", 0 ): ( "b", 1 ), ( "a", 1 ): ( "b", 0 ), ( "b", 0 ): ( "a", 1 ), ( "b", 1 ): ( "a", 0 ) } )

def g2Phi( G ):
    return VVPermutation.fromPairs( G, { ( "X1", 0 ): ( "X2", 1 ), ( "X1", 1 ): ( "X2", 0 ), ( "X2", 0 ): ( "X1", 1 ), ( "X2", 1 ): ( "X1", 0 ) } )

class TestVVPermutation( unittest.TestCase ):
    def test_isValidVv( self ):
        G = toyG1()
        self.assertTrue( isValidVv( VVPermutation.identity( G ) ) )
        bad = VVPermutation.fromPairs( G, { ( "a", 0 ): ( "b", 1 ), ( "b", 1 ): ( "a", 0 ) } )
        self.assertFalse( isValidVv( bad ) )
        with self.assertRaises( vvmc.InvalidPermutation ):
            applyVvToState( bad, ( 0, 0 ) )
        self.assertTrue( isValidVv( g1Phi( G ) ) )
        #A valid VV permutation can't map a variable onto one with a different domain
        self.assertFalse( isValidVv( VVPermutation.fromPairs( toyG3Nec(), { ( "a", 0 ): ( "b", 0 ), ( "b", 0 ): ( "a", 0 ) } ) ) )

    def test_applyVvToState( self ):
        G = toyG2()
        self.assertEqual( applyVvToState( VVPermutation.identity( G ), ( 0, 1 ) ), ( 0, 1 ) )
        self.assertEqual( applyVvToState( g2Phi( G ), ( 0, 0 ) ), ( 1, 1 ) )
        G = toyG1()
        self.assertEqual( applyVvToState( g1Phi( G ), ( 0, 0 ) ), ( 1, 1 ) )
        states = G.statesArray()
        np.testing.assert_array_equal( g1Phi( G ).applyArray( states ), [ g1Phi( G ).apply( s ) for s in states ] )

    def test_applyVvToModel( self ):
        G = toyG1()
        self.assertEqual( applyVvToModel( VVPermutation.identity( G ), G ), G )
        self.assertEqual( applyVvToModel( g1Phi( G ), G ), G )
        H = toyG2( 1.0, 2.0 )
        image = applyVvToModel( g2Phi( H ), H )
        self.assertEqual( image.features[0].literals, ( ( 0, 1, True ), ( 1, 1, True ) ) )
        self.assertEqual( image.features[0].weight, 1.0 )

    def test_isVvSymmetry( self ):
        G = toyG1( LN2, LN3 )
        self.assertTrue( isVvSymmetry( VVPermutation.identity( G ), G ) )
        self.assertTrue( isVvSymmetry( g1Phi( G ), G ) )
        swap = embedVariableSymmetry( ( 1, 0 ), G )
        self.assertFalse( isVvSymmetry( swap, G ) )

    def test_embedVariableSymmetry( self ):
        G = genRing( RingSpec( 4, 1.0, 2.0 ) )
        self.assertTrue( embedVariableSymmetry( ( 0, 1, 2, 3 ), G ).isIdentity() )
        rot = embedVariableSymmetry( ( 2, 3, 0, 1 ), G )
        self.assertTrue( rot.hasIdentityValueMaps() )
        self.assertTrue( isVvSymmetry( rot, G ) )
        with self.assertRaises( vvmc.DomainMismatch ):
            embedVariableSymmetry( ( 1, 0 ), toyG3Nec() )

    def test_isCountSymmetry( self ):
        G = genRing( RingSpec( 4, 1.0, 2.0 ) )
        for theta in variableSymmetries( G ):
            self.assertTrue( isCountSymmetry( embedVariableSymmetry( theta, G ), G ) )
        H = toyG2( 1.0, 2.0 )
        self.assertFalse( isCountSymmetry( g2Phi( H ), H ) )
        self.assertTrue( isCountSymmetry( VVPermutation.identity( H ), H ) )

    def test_composeInverse( self ):
        G = toyG1()
        phi = g1Phi( G )
        self.assertTrue( ( phi * phi ).isIdentity() )
        self.assertEqual( phi.inverse(), phi )
        self.assertEqual( phi.format( G.names ), "(a.0 b.1)(a.1 b.0)" )

class TestTaxonomy( unittest.TestCase ):
    def test_g1( self ):
        G = toyG1( LN2, LN3 )
        t = classifyTaxonomy( G, vvSymmetries( G ) )
        self.assertEqual( t.label, LABEL_SRV_COUNT )
        self.assertEqual( t.witnessText, "rename b.0↔b.1" )
        self.assertEqual( t.witness, ( ( 0, 1 ), ( 1, 0 ) ) )

    def test_xor( self ):
        G = toyXor( 1.0 )
        t = classifyTaxonomy( G, vvSymmetries( G ) )
        self.assertEqual( t.label, LABEL_URV_COUNT )

    def test_g2( self ):
        G = toyG2( 1.0, 1.0 )
        t = classifyTaxonomy( G, vvSymmetries( G ) )
        self.assertEqual( t.label, LABEL_EQUICARDINAL )

    def test_count( self ):
        G = genRing( RingSpec( 4, 1.0, 1.0 ) )
        gens = [ embedVariableSymmetry( theta, G ) for theta in variableSymmetries( G ) ]
        self.assertEqual( classifyTaxonomy( G, gens ).label, LABEL_COUNT )
        self.assertEqual( classifyTaxonomy( G, gens, nec=True ).label, LABEL_NON_EQUICARDINAL )

    def test_isRenamableToCount( self ):
        G = toyG2()
        self.assertTrue( isRenamableToCount( g2Phi( G ) ) )
        flipOne = VVPermutation.fromPairs( G, { ( "X1", 0 ): ( "X1", 1 ), ( "X1", 1 ): ( "X1", 0 ) } )
        self.assertFalse( isRenamableToCount( flipOne ) )

class TestOrbits( unittest.TestCase ):
    def test_g1Orbits( self ):
        G = toyG1( LN2, LN3 )
        self.assertEqual( stateOrbits( G, [ embedVariableSymmetry( theta, G ) for theta in variableSymmetries( G ) ] ),
                          [ ( ( 0, 0 ), ), ( ( 0, 1 ), ), ( ( 1, 0 ), ), ( ( 1, 1 ), ) ] )
        self.assertIn( ( ( 0, 0 ), ( 1, 1 ) ), stateOrbits( G, vvSymmetries( G ) ) )

    def test_equalProbabilityPartition( self ):
        self.assertEqual( equalProbabilityPartition( vvmc.GraphicalModel( [ ( "a", 2 ), ( "b", 2 ) ] ) ), [ ( ( 0, 0 ), ( 0, 1 ), ( 1, 0 ), ( 1, 1 ) ) ] )
        self.assertEqual( equalProbabilityPartition( toyG3Nec( LN2 ) ), [
            ( ( 0, 0 ), ),
            ( ( 0, 1 ), ( 0, 2 ), ( 1, 0 ) ),
            ( ( 1, 1 ), ( 1, 2 ) )
        ] )
        self.assertIn( ( ( 0, 0 ), ( 1, 1 ) ), equalProbabilityPartition( toyG1( LN2, LN3 ) ) )

    def test_orbitsAreEquiprobable( self ):
        for G in ( toyG1( LN2, LN3 ), toyG2( 1.0, 2.0 ), toyXor( 0.3 ), genRing( RingSpec( 4, LN2, LN3, 0.5, 7 ) ) ):
            P = vvmc.exactDistribution( G )
            for o in stateOrbits( G, vvSymmetries( G ) ):
                for s in o:
                    self.assertAlmostEqual( P[s], P[o[0]], places=12 )

if __name__ == "__main__":
    unittest.main()
