#!/usr/bin/env python3
"""
ascentlab - Fitness landscapes of Boolean VCSP constructions
Main entry point
"""
from src.main import main

if __name__ == "__main__":
    raise SystemExit(main())
