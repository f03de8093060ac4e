"""Allow running as: python -m nstep_lab"""
from .cli import main

if __name__ == "__main__":
    main()
