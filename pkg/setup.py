from setuptools import find_packages, setup

setup(
    name="idbench",
    version="0.1.0",
    description="Nonclassicality benchmarks for noisy qubit arrays built on Pauli identity products.",
    keywords="quantum benchmark ghz entanglement stabilizer density-matrix".split(),
    packages=find_packages(exclude=["tests"]),
    python_requires=">=3.8",
    install_requires=["numpy", "pydantic<2", "cachetools"],
    extras_require={
        "all": ["typer<0.26", "click"],
        "cli": ["typer<0.26", "click"],
        "test": ["pytest", "hypothesis", "scipy", "typer<0.26", "click"],
        "doc": ["mkdocs-material", "pdoc"],
    },
    include_package_data=True,
    package_data={"idbench": ["py.typed", "data/*.catalog"]},
    long_description=open("README.md", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    license="MIT",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Topic :: Scientific/Engineering :: Physics",
        "Typing :: Typed",
    ],
    entry_points="""
        [console_scripts]
        idbench=idbench.__main__:main[cli]
    """,
)
