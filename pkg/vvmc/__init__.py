"""
vvmc finds variable-value (VV) and non-equicardinal (NEC) symmetries of discrete graphical models
and uses them to speed up MCMC sampling (Orbital, VV-Orbital and NEC-Orbital MCMC).
"""

VERSION = "1.0.0"

#Feature kinds, constants, exceptions
from vvmc.shared import (
    MODE_CLAUSAL, MODE_CONJUNCTIVE, HARD,
    VVMCError, ConfigError, ModelFormatError, SizeMismatch, NonBooleanVariable, InvalidPermutation, InvalidLift, DomainMismatch,
    RatioNotConstant, UnsatisfiableModel, EmptyGroupError,
    ResourceCapError, StateSpaceTooLarge, OrbitCapExceeded, SearchBudgetExceeded, RenamingSpaceTooLarge
)

#Models and exact inference
from vvmc.model import Variable, Literal, Feature, GraphicalModel, Distribution, logWeight, exactDistribution, exactMarginals

#Text model format: parser, handlers, writer
from vvmc.parse   import parse, read, loads
from vvmc.handler import ModelHandler, ModelBuilder, PrintModelHandler
from vvmc.writer  import writer, ModelWriter, write, dumps

#Permutation groups
from vvmc.permgroup import Permutation, GeneratorSet, PRASampler, orbitOfPoint, orbitPartition, groupClosure, uniformOrbitElement

#Symmetry detection
from vvmc.autograph import ColoredGraph, buildVariableGraph, buildVvGraph, colorRefinement, automorphismGenerators, variableSymmetries, vvSymmetries
from vvmc.symmetry  import VVPermutation, isVvSymmetry, isCountSymmetry, classifyTaxonomy, stateOrbits, equalProbabilityPartition
from vvmc.reduction import ValueClasses, ReducedModel, NECSymmetry, valueSwapClasses, reduceModel, kRatio, applyNec, necSymmetries, necOrbitPartition

#Samplers and experiments
from vvmc.samplers   import ChainConfig, ChainState, StateGroup, gibbsStep, orbitalStep, necOrbitalStep, runChain, explicitKernel
from vvmc.experiment import ExperimentSpec, klDivergence, runExperiment


#Export everything we imported above
__all__ = [
    "VERSION",
    "MODE_CLAUSAL", "MODE_CONJUNCTIVE", "HARD",
    "VVMCError", "ConfigError", "ModelFormatError", "SizeMismatch", "NonBooleanVariable", "InvalidPermutation", "InvalidLift", "DomainMismatch",
    "RatioNotConstant", "UnsatisfiableModel", "EmptyGroupError",
    "ResourceCapError", "StateSpaceTooLarge", "OrbitCapExceeded", "SearchBudgetExceeded", "RenamingSpaceTooLarge",
    "Variable", "Literal", "Feature", "GraphicalModel", "Distribution", "logWeight", "exactDistribution", "exactMarginals",
    "parse", "read", "loads",
    "ModelHandler", "ModelBuilder", "PrintModelHandler",
    "writer", "ModelWriter", "write", "dumps",
    "Permutation", "GeneratorSet", "PRASampler", "orbitOfPoint", "orbitPartition", "groupClosure", "uniformOrbitElement",
    "ColoredGraph", "buildVariableGraph", "buildVvGraph", "colorRefinement", "automorphismGenerators", "variableSymmetries", "vvSymmetries",
    "VVPermutation", "isVvSymmetry", "isCountSymmetry", "classifyTaxonomy", "stateOrbits", "equalProbabilityPartition",
    "ValueClasses", "ReducedModel", "NECSymmetry", "valueSwapClasses", "reduceModel", "kRatio", "applyNec", "necSymmetries", "necOrbitPartition",
    "ChainConfig", "ChainState", "StateGroup", "gibbsStep", "orbitalStep", "necOrbitalStep", "runChain", "explicitKernel",
    "ExperimentSpec", "klDivergence", "runExperiment"
]
