from setuptools import setup, find_packages

with open("./orbikit/version.py") as f:
    exec(f.read())

setup(
    name="orbikit",
    version=__version__,
    description="Exact computations with closed 2-dimensional orbifolds.",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["examples*", "tests*"]),
    install_requires=["pydantic>=2", "networkx", "numpy", "scipy", "sympy"],
    entry_points={
        "console_scripts": [
            "orbikit=orbikit.controllers.cli_controller:main"
        ]
    },
    license="Apache v2",
    classifiers=[
        "Programming Language :: Python :: 3"
    ]
)
