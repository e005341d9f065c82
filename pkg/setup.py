"""

PyGreess setup script.

"""

import os
import re
import setuptools


def get_package_variable(key):
    fspec = os.path.join("pygreess", "__init__.py")
    with open(fspec) as f:
        for line in f:
            m = re.match(r"(\S+)\s*=\s*[\"']?(.+?)[\"']?\s*$", line)
            if m and key == m.group(1):
                return m.group(2)
    return None


def get_readme():
    with open("README.md") as f:
        readme = f.read()
    return readme


setuptools.setup(
    name="pygreess",
    packages=setuptools.find_packages(),
    version=get_package_variable("__version__"),
    license="MIT",
    description="Boolean matrix factorization from below, driven by the essential elements of the matrix.",
    long_description=get_readme(),
    long_description_content_type="text/markdown",
    python_requires=">=3.10.0",
    install_requires=["numpy", "bitarray>=2.8,<3"],
    keywords=["boolean matrix factorization", "formal concept analysis", "data mining", "greess", "grecond"],
    classifiers=[
        "Development Status :: 4 - Beta",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Information Analysis",
        "Topic :: Software Development :: Libraries :: Python Modules",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Education",
    ],
    scripts=[
        "tools/pygreess_bmf.py",
    ],
)
