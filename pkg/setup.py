"""
Setup script for the SLPR text-region toolkit.
"""
from setuptools import setup, find_packages

# Read the README file
def read_readme():
    with open("README.md", "r", encoding="utf-8") as fh:
        return fh.read()

# Read requirements
def read_requirements():
    with open("requirements.txt", "r", encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip() and not line.startswith("#")]

setup(
    name="slpr-toolkit",
    version="1.0.0",
    description="Sliding line point regression geometry: text-region encoding, restoration, NMS and evaluation",
    long_description=read_readme(),
    long_description_content_type="text/markdown",
    packages=find_packages(where="src") + ["config"],
    package_dir={"": "src", "config": "config"},
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Image Recognition",
        "Topic :: Software Development :: Libraries :: Python Modules",
    ],
    python_requires=">=3.9",
    install_requires=read_requirements(),
    extras_require={
        "dev": [
            "pytest>=7.4.3",
            "pytest-cov>=4.1.0",
            "hypothesis>=6.90",
            "black>=23.11.0",
            "flake8>=6.1.0",
            "mypy>=1.7.1",
        ],
        "test": [
            "pytest>=7.4.3",
            "pytest-cov>=4.1.0",
            "hypothesis>=6.90",
        ],
    },
    entry_points={
        "console_scripts": [
            "slpr=slpr.cli:main",
            "slpr-api=slpr.api.main:main",
        ],
    },
    include_package_data=True,
    zip_safe=False,
    keywords="text detection, polygon, nms, iou, icdar2015, ctw1500, sliding line",
)
