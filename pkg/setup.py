from setuptools import setup

setup(
    name="polycat",
    version="0.1",
    description="Polynomial functors over finite sets: limits, composition, comonoids as categories and their nerves.",
    packages=[
        "polycat",
        "polycat.finset",
        "polycat.poly",
        "polycat.bilimits",
        "polycat.monoidal",
        "polycat.comonad",
        "polycat.simplex",
        "polycat.nerve",
        "polycat.cli",
    ],
    install_requires=[
        "pytest",
        "hypothesis",
        "numpy",
        "python-dotenv",
        "argparse",
    ],
    entry_points={
        "console_scripts": [
            "polycat=polycat.cli.app:main",
        ],
    },
)
