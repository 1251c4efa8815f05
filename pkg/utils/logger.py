import logging
import os
from logging.handlers import RotatingFileHandler

class Logger:
    """Centralized logging utility for the deformation quantization workbench"""

    def __init__(self, name="fdq", log_level=None, log_dir=None):
        self.logger = logging.getLogger(name)

        # Set log level from environment or default to INFO
        if log_level is None:
            log_level = os.getenv('LOG_LEVEL', 'INFO')

        level = getattr(logging, log_level.upper(), logging.INFO)
        self.logger.setLevel(level)

        if log_dir is None:
            log_dir = os.getenv('FDQ_LOG_DIR', 'logs')
        self.log_dir = log_dir

        # Prevent duplicate handlers
        if not self.logger.handlers:
            self._setup_handlers()

    def _setup_handlers(self):
        """Setup console and file handlers"""
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )

        # Console handler writes to stderr; stdout belongs to command output
        console_handler = logging.StreamHandler()
        console_handler.setLevel(logging.WARNING)
        console_handler.setFormatter(formatter)
        self.logger.addHandler(console_handler)

        # An empty FDQ_LOG_DIR disables the file log
        if not self.log_dir:
            return

        if not os.path.exists(self.log_dir):
            os.makedirs(self.log_dir, exist_ok=True)

        file_handler = RotatingFileHandler(
            os.path.join(self.log_dir, "fdq.log"),
            maxBytes=10*1024*1024,  # 10MB
            backupCount=5
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        self.logger.addHandler(file_handler)

    def info(self, message):
        """Log info message"""
        self.logger.info(message)

    def error(self, message):
        """Log error message"""
        self.logger.error(message)

    def warning(self, message):
        """Log warning message"""
        self.logger.warning(message)

    def debug(self, message):
        """Log debug message"""
        self.logger.debug(message)

    def critical(self, message):
        """Log critical message"""
        self.logger.critical(message)

    def log_run_start(self, kind, config_hash, dimension):
        """Log the start of a lattice run"""
        self.info(f"Starting {kind} run - config {config_hash[:12]}, dimension {dimension}")

    def log_run_end(self, kind, config_hash, steps, unitarity_defect):
        """Log the end of a lattice run with its unitarity defect"""
        defect = "n/a" if unitarity_defect is None else f"{unitarity_defect:.3e}"
        self.info(f"Finished {kind} run - config {config_hash[:12]}, {steps} steps, unitarity defect {defect}")

    def log_residual(self, label, value):
        """Log a measured residual norm"""
        self.info(f"Residual {label}: {value:.3e}")

    def log_rewrite(self, steps, words, strategy):
        """Log normal-form rewriting statistics"""
        self.debug(f"Normal form reached after {steps} rewrites over {words} words ({strategy} strategy)")

# Global logger instance
logger = Logger()
