from setuptools import setup

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="fvb-lab",
    version="1.0.0",
    author="fvb-lab",
    description="평탄 가상 꼬임군 국소 표현의 정확 산술 검증 도구",
    long_description=long_description,
    long_description_content_type="text/markdown",
    py_modules=["fvb_lab"],
    packages=["config", "src"],
    package_dir={"": "."},
    entry_points={
        "console_scripts": [
            "fvb-lab=fvb_lab:main",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=[
        "sympy>=1.12",
        "numpy>=1.22",
        "pandas>=1.5",
        "python-dotenv>=0.19.0",
    ],
)
