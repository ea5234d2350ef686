#Benchmark and example models
from vvmc.domains.toys       import toyG1, toyG2, toyG3Nec, toyXor
from vvmc.domains.ring       import RingSpec, genRing
from vvmc.domains.curriculum import CurriculumSpec, genCurriculum, DEFAULT_FAIL_WEIGHTS
from vvmc.domains.binarize   import Binarization, binarize

__all__ = [
    "toyG1", "toyG2", "toyG3Nec", "toyXor",
    "RingSpec", "genRing",
    "CurriculumSpec", "genCurriculum", "DEFAULT_FAIL_WEIGHTS",
    "Binarization", "binarize"
]
