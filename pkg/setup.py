from setuptools import setup
from vvmc       import VERSION

setup(
    name             = "vvmc",
    version          = VERSION,
    description      = "Variable-value symmetries and orbital MCMC for discrete graphical models",
    packages         = [ "vvmc", "vvmc.domains" ],
    zip_safe         = True,
    python_requires  = ">=3.8",
    install_requires = [ "numpy" ],
    extras_require   = {
        #networkx is only used by the tests, as an independent automorphism oracle
        "test": [ "networkx" ]
    },
    test_suite       = "test",
    entry_points     = {
        "console_scripts": [ "vvmc = vvmc.cli:main" ]
    }
)
