import os
import logging

from GenFlag.config import DEFAULT_OUTPUT_DIR

logger = logging.getLogger(__name__)


class ReportSaver:
    def __init__(self, output_dir=DEFAULT_OUTPUT_DIR):
        """
        Initializes the ReportSaver with a specified output directory.

        Args:
            output_dir (str): The directory where report files will be saved.
        """
        self.output_dir = output_dir

    def save_report(self, filename: str, text: str):
        """
        Writes a rendered report or document to the output directory.

        Args:
            filename (str): Name of the file to create inside the output directory.
            text (str): Report text, written as UTF-8.

        Returns:
            str: Path of the written file, or None if writing failed.
        """
        os.makedirs(self.output_dir, exist_ok=True)
        logger.debug(f"Output directory created or already exists: {self.output_dir}")

        file_path = os.path.join(self.output_dir, filename)
        try:
            with open(file_path, 'w', encoding='utf-8') as file:
                file.write(text)
            logger.info(f"Report saved to {file_path}")
            return file_path
        except OSError as e:
            logger.error(f"Error saving report: {e}")
            return None
