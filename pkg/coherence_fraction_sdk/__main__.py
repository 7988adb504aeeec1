import sys

from coherence_fraction_sdk.cli import main

sys.exit(main())
